use crate::bits::VertexSet;
use crate::constructions::{clique_path, delta_extremal};
use crate::error::Result;
use crate::graph::Graph;

/// Result of min-degree peeling. Core vertex `i` is input vertex `kept[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peeled {
    pub core: Graph,
    pub kept: Vec<usize>,
    /// Input vertices in deletion order.
    pub removed: Vec<usize>,
}

/// Deletes a minimum-degree vertex (lowest index first) while the minimum
/// degree is below that of `G_{i,k,r}` at the current order `i`. Orders at
/// which `G_{i,k,r}` is undefined count as below threshold, so peeling can
/// run down to the empty graph.
pub fn peel(g: &Graph, k: usize, r: usize) -> Result<Peeled> {
    clique_path(k, r)?;
    let mut alive = g.vertices();
    let mut deg = g.degrees();
    let mut removed = Vec::new();
    while let Some(v) = alive.iter().min_by_key(|&v| (deg[v], v)) {
        let threshold = delta_extremal(alive.len(), k, r).ok();
        if threshold.is_some_and(|t| deg[v] >= t) {
            break;
        }
        alive.remove(v);
        for u in g.neighbors(v).intersection(&alive).iter() {
            deg[u] -= 1;
        }
        removed.push(v);
    }
    let core = g.induced(&alive)?;
    Ok(Peeled { core, kept: alive.to_vec(), removed })
}

impl Peeled {
    pub fn to_input(&self, core_vertices: &[usize]) -> Vec<usize> {
        core_vertices.iter().map(|&v| self.kept[v]).collect()
    }

    pub fn kept_set(&self) -> VertexSet {
        self.kept.iter().copied().collect()
    }
}
