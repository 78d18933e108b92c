//! Twin classes: vertices with equal open neighborhoods (non-adjacent twins)
//! or equal closed neighborhoods (adjacent twins). Swapping two members of a
//! class is an automorphism, so a search may restrict each choice to the
//! lowest unused member of its class.

use crate::bits::{Row, VertexSet};
use crate::graph::Graph;

/// For each vertex, the members of its twin class (including itself).
pub(crate) fn twin_classes<R: Row>(g: &Graph) -> Vec<R> {
    let n = g.n();
    let open: Vec<VertexSet> = (0..n).map(|v| g.neighbors(v)).collect();
    let closed: Vec<VertexSet> = open
        .iter()
        .enumerate()
        .map(|(v, s)| {
            let mut c = s.clone();
            c.insert(v);
            c
        })
        .collect();
    let mut rep = vec![usize::MAX; n];
    for v in 0..n {
        if rep[v] != usize::MAX {
            continue;
        }
        rep[v] = v;
        for u in v + 1..n {
            // a vertex cannot have both kinds of nontrivial twins
            if rep[u] == usize::MAX && (open[u] == open[v] || closed[u] == closed[v]) {
                rep[u] = v;
            }
        }
    }
    let mut members: Vec<R> = vec![R::empty(); n];
    for v in 0..n {
        members[rep[v]].insert(v);
    }
    (0..n).map(|v| members[rep[v]].clone()).collect()
}
