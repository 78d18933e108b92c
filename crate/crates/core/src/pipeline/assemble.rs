use super::decompose::DecompositionState;
use crate::bits::VertexSet;
use crate::containment::Witness;
use crate::graph::Graph;
use crate::pattern::PatternSpec;

fn clique_witness(r: usize, vertices: Vec<usize>) -> Witness {
    Witness::new(PatternSpec::Clique { r }, vertices)
}

fn extend(g: &Graph, cands: &mut [(usize, VertexSet)], chosen: &mut Vec<usize>) -> bool {
    let Some(idx) = (0..cands.len()).min_by_key(|&i| (cands[i].1.len(), cands[i].0)) else {
        return true;
    };
    cands.swap(0, idx);
    let (head, rest) = cands.split_first_mut().expect("non-empty");
    for c in head.1.iter() {
        let mut narrowed: Vec<(usize, VertexSet)> =
            rest.iter().map(|(p, s)| (*p, s.intersection(&g.neighbors(c)))).collect();
        if narrowed.iter().any(|(_, s)| s.is_empty()) {
            continue;
        }
        chosen.push(c);
        if extend(g, &mut narrowed, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Completes the clique `k` to an `r`-clique with one vertex from every
/// part it misses, never using avoided vertices. `k` must be a clique with
/// exactly one felon and at most one vertex per part; its own vertices are
/// exempt from the avoided set. Parts with fewer candidates are filled first.
pub fn avoiding_extension(g: &Graph, state: &DecompositionState, k: &[usize]) -> Option<Witness> {
    let mut touched = vec![false; state.parts.len()];
    let mut felons = 0;
    for (i, &u) in k.iter().enumerate() {
        if k[..i].iter().any(|&w| w == u || !g.has_edge(w, u)) {
            return None;
        }
        match state.part_of(u) {
            Some(p) if touched[p] => return None,
            Some(p) => touched[p] = true,
            None if state.felons.contains(u) => felons += 1,
            None => return None,
        }
    }
    if felons != 1 {
        return None;
    }
    fill(g, state, k, &touched)
}

/// Adds one vertex from every part not marked `touched` to the clique `k`.
fn fill(g: &Graph, state: &DecompositionState, k: &[usize], touched: &[bool]) -> Option<Witness> {
    let base: VertexSet = k.iter().copied().collect();
    let common = g.common_neighborhood(&base).ok()?.difference(&state.avoided);
    let mut cands: Vec<(usize, VertexSet)> =
        (0..state.parts.len()).filter(|&p| !touched[p]).map(|p| (p, state.parts[p].intersection(&common))).collect();
    if cands.iter().any(|(_, s)| s.is_empty()) {
        return None;
    }
    let mut chosen = k.to_vec();
    extend(g, &mut cands, &mut chosen).then(|| clique_witness(state.parts.len() + 1, chosen))
}

/// An `r`-clique through the in-part edge `ab`, optionally through one more
/// good vertex `via`, with one vertex from each remaining part.
pub(crate) fn edge_clique(
    g: &Graph,
    state: &mut DecompositionState,
    a: usize,
    b: usize,
    via: Option<usize>,
) -> Option<Witness> {
    let p = state.part_of(a)?;
    if state.part_of(b) != Some(p) || !g.has_edge(a, b) {
        return None;
    }
    let mut touched = vec![false; state.parts.len()];
    touched[p] = true;
    let mut k = vec![a, b];
    if let Some(v) = via {
        let q = state.part_of(v).filter(|&q| q != p)?;
        if !g.has_edge(a, v) || !g.has_edge(b, v) {
            return None;
        }
        touched[q] = true;
        k.push(v);
    }
    let w = fill(g, state, &k, &touched)?;
    for &u in &w.map {
        state.avoided.insert(u);
    }
    Some(w)
}

/// Two `r`-cliques, one through each felon, meeting exactly in `hinge`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connector {
    pub first: Witness,
    pub second: Witness,
    pub hinge: usize,
}

/// Hinge candidates: common neighbors of both anchor cores among the good,
/// non-avoided vertices. Parts where `x` has the fewest usable neighbors
/// come first, since a hinge serves two cliques from one vertex.
fn hinge_candidates(g: &Graph, state: &DecompositionState, core_x: &[usize], core_y: &[usize]) -> Vec<usize> {
    let both: VertexSet = core_x.iter().chain(core_y).copied().collect();
    let Ok(common) = g.common_neighborhood(&both) else {
        return Vec::new();
    };
    let usable = g.neighbors(core_x[0]).difference(&state.avoided);
    let mut order: Vec<usize> = (0..state.parts.len()).collect();
    order.sort_by_key(|&p| (state.parts[p].intersection(&usable).len(), p));
    order.into_iter().flat_map(|p| state.parts[p].intersection(&common).difference(&state.avoided).to_vec()).collect()
}

/// Connector between anchors `x` and `y` (felons or deported vertices);
/// on success every vertex used is added to `state.avoided`.
pub fn build_connector(g: &Graph, state: &mut DecompositionState, x: usize, y: usize) -> Option<Connector> {
    if x == y {
        return None;
    }
    let core_x = state.anchor_core(x);
    let core_y = state.anchor_core(y);
    for v in hinge_candidates(g, state, &core_x, &core_y) {
        let mut k1 = core_x.clone();
        k1.push(v);
        let Some(first) = avoiding_extension(g, state, &k1) else {
            continue;
        };
        let saved = state.avoided.clone();
        state.avoided = state.avoided.union(&first.map.iter().copied().filter(|&u| u != v).collect());
        let mut k2 = core_y.clone();
        k2.push(v);
        if let Some(second) = avoiding_extension(g, state, &k2) {
            for &u in &second.map {
                state.avoided.insert(u);
            }
            return Some(Connector { first, second, hinge: v });
        }
        state.avoided = saved;
    }
    None
}

/// Extension of `k` whose vertices all become avoided.
pub(crate) fn claim(g: &Graph, state: &mut DecompositionState, k: &[usize]) -> Option<Witness> {
    let w = avoiding_extension(g, state, k)?;
    for &u in &w.map {
        state.avoided.insert(u);
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::super::decompose::decompose;
    use super::*;
    use crate::constructions::{extremal_candidate, ExtremalVariant};
    use crate::containment::generic_contains;

    fn state_24_5_4() -> (Graph, DecompositionState) {
        let g = extremal_candidate(24, 5, 4, ExtremalVariant::LargestPart).unwrap();
        let s = decompose(&g, 5, 4).unwrap();
        (g, s)
    }

    #[test]
    fn universal_felon_extends() {
        let (g, s) = state_24_5_4();
        let w = avoiding_extension(&g, &s, &[0]).unwrap();
        assert_eq!(w.map.len(), 4);
        assert!(w.is_valid(&g));
        assert!(generic_contains(&g.induced(&w.map.iter().copied().collect()).unwrap(), &Graph::complete(4)).is_some());
        for p in &s.parts {
            assert_eq!(w.map.iter().filter(|&&v| p.contains(v)).count(), 1);
        }
    }

    #[test]
    fn avoided_part_blocks_extension() {
        let (g, mut s) = state_24_5_4();
        s.avoided = s.parts[1].clone();
        assert!(avoiding_extension(&g, &s, &[0]).is_none());
    }

    #[test]
    fn malformed_seeds_are_rejected() {
        let (g, s) = state_24_5_4();
        assert!(avoiding_extension(&g, &s, &[0, 1]).is_none(), "two felons");
        let a = s.parts[0].first().unwrap();
        assert!(avoiding_extension(&g, &s, &[a]).is_none(), "no felon");
        let b = s.parts[0].iter().nth(1).unwrap();
        assert!(avoiding_extension(&g, &s, &[0, a, b]).is_none(), "same part twice");
    }

    #[test]
    fn connector_between_universal_felons() {
        let (g, mut s) = state_24_5_4();
        let c = build_connector(&g, &mut s, 0, 1).unwrap();
        assert!(c.first.is_valid(&g) && c.second.is_valid(&g));
        assert!(c.first.map.contains(&0) && c.second.map.contains(&1));
        let a: VertexSet = c.first.map.iter().copied().collect();
        let b: VertexSet = c.second.map.iter().copied().collect();
        assert_eq!(a.intersection(&b).to_vec(), vec![c.hinge]);
        assert!(s.good_vertices().contains(c.hinge));
        assert!(a.union(&b).is_subset(&s.avoided));
    }

    #[test]
    fn connector_needs_a_fresh_common_neighbor() {
        let (g, mut s) = state_24_5_4();
        s.avoided = s.good_vertices();
        assert!(build_connector(&g, &mut s, 0, 1).is_none());
        assert!(build_connector(&g, &mut s, 0, 0).is_none());
    }

    #[test]
    fn caps_are_disjoint_from_avoided() {
        let (g, mut s) = state_24_5_4();
        let first = claim(&g, &mut s, &[0]).unwrap();
        let second = claim(&g, &mut s, &[0]).unwrap();
        let a: VertexSet = first.map.iter().copied().collect();
        let b: VertexSet = second.map.iter().copied().collect();
        assert_eq!(a.intersection(&b).to_vec(), vec![0]);
    }
}
