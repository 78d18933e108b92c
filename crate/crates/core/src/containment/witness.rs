use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::PatternSpec;
use serde::{Deserialize, Serialize};

/// A copy of `pattern` in a host graph: `map[u]` is the host vertex
/// assigned to pattern vertex `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pattern: PatternSpec,
    pub map: Vec<usize>,
}

impl Witness {
    pub fn new(pattern: PatternSpec, map: Vec<usize>) -> Self {
        Witness { pattern, map }
    }

    /// Recomputes injectivity and edge preservation against `host`.
    pub fn validate(&self, host: &Graph) -> Result<()> {
        let pattern = self.pattern.graph()?;
        if self.map.len() != pattern.n() {
            return Err(Error::InvalidWitness(format!(
                "map has {} entries, pattern has {} vertices",
                self.map.len(),
                pattern.n()
            )));
        }
        let mut seen = vec![false; host.n()];
        for (u, &v) in self.map.iter().enumerate() {
            if v >= host.n() {
                return Err(Error::InvalidWitness(format!("pattern vertex {u} maps outside the host ({v})")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidWitness(format!("host vertex {v} used twice")));
            }
        }
        for (a, b) in pattern.edges() {
            if !host.has_edge(self.map[a], self.map[b]) {
                return Err(Error::InvalidWitness(format!(
                    "pattern edge {a}-{b} maps to non-edge {}-{}",
                    self.map[a], self.map[b]
                )));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, host: &Graph) -> bool {
        self.validate(host).is_ok()
    }

    /// Host vertices used by the copy, sorted.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }
}
