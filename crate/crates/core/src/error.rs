use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop requested at vertex {0}")]
    Loop(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("construction needs more vertices: {0}")]
    TooFewVertices(String),

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("graph on {n} vertices exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    #[error("time budget of {0} ms exhausted")]
    TimeExhausted(u64),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid pattern: {0}")]
    Pattern(String),
}

pub type Result<T> = std::result::Result<T, Error>;
