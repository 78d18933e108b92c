use crate::bits::VertexSet;
use crate::graph::Graph;
use serde::Serialize;

/// Near-Turán structure of a dense graph.
///
/// `parts[..r-2]` are the sets `L_i`, the last part is `R`. Parts and felons
/// are disjoint and cover the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionState {
    pub parts: Vec<VertexSet>,
    pub felons: VertexSet,
    /// Vertices no new clique vertex may use.
    pub avoided: VertexSet,
    /// Cliques placed so far, in path order.
    pub partial_path: Vec<Vec<usize>>,
    /// `(a, b)`: in-part edges whose endpoint `a` was moved to the felons.
    pub deported: Vec<(usize, usize)>,
    /// Minimum-degree vertex whose neighborhood seeded the parts.
    pub pivot: usize,
    /// The `(r-2)`-clique `v_1..v_{r-2}` with `v_i ∈ L_i`.
    pub seed_clique: Vec<usize>,
    /// `e + 2f` before and after each reintegration step.
    pub potential: Vec<usize>,
}

impl DecompositionState {
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }

    pub fn good_vertices(&self) -> VertexSet {
        self.parts.iter().fold(VertexSet::new(), |acc, p| acc.union(p))
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(VertexSet::len).collect()
    }

    pub fn in_part_edges(&self, g: &Graph) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for p in &self.parts {
            for u in p.iter() {
                for v in g.neighbors(u).intersection(p).iter().filter(|&v| v > u) {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// `x` together with its in-part partner when `x` was deported.
    pub fn anchor_core(&self, x: usize) -> Vec<usize> {
        match self.deported.iter().find(|&&(a, _)| a == x) {
            Some(&(a, b)) => vec![a, b],
            None => vec![x],
        }
    }

    /// Moves `a` of the in-part edge `ab` to the felons; `b` becomes avoided.
    pub fn deport(&mut self, a: usize, b: usize) {
        for p in &mut self.parts {
            p.remove(a);
        }
        self.felons.insert(a);
        self.avoided.insert(b);
        self.deported.push((a, b));
    }

    fn potential_now(&self, g: &Graph) -> usize {
        self.in_part_edges(g).len() + 2 * self.felons.len()
    }
}

/// Builds `(r-2)` greedily inside `cand`, always taking the vertex of least
/// degree in `G[within]`, lowest index on ties.
fn greedy_clique(g: &Graph, within: &VertexSet, size: usize) -> Option<Vec<usize>> {
    let mut cand = within.clone();
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let v = cand.iter().min_by_key(|&v| (g.degree_into(v, within), v))?;
        out.push(v);
        cand = cand.intersection(&g.neighbors(v));
    }
    Some(out)
}

/// Repeatedly moves a path `u-v-w` inside one part to the felons, until every
/// part induces a matching.
fn strip_paths(g: &Graph, parts: &mut [VertexSet], felons: &mut VertexSet) {
    for part in parts.iter_mut() {
        loop {
            let Some(v) = part.iter().find(|&v| g.degree_into(v, part) >= 2) else {
                break;
            };
            let nb: Vec<usize> = g.neighbors(v).intersection(part).iter().take(2).collect();
            for x in [nb[0], v, nb[1]] {
                part.remove(x);
                felons.insert(x);
            }
        }
    }
}

/// Moves felons with at most one neighbor in some part into that part,
/// expelling a part vertex that ends with two in-part neighbors. Each step
/// lowers `e + 2f`.
fn reintegrate(g: &Graph, state: &mut DecompositionState) {
    state.potential.push(state.potential_now(g));
    loop {
        let Some((x, i)) = state
            .felons
            .iter()
            .find_map(|x| (0..state.parts.len()).find(|&i| g.degree_into(x, &state.parts[i]) <= 1).map(|i| (x, i)))
        else {
            break;
        };
        state.felons.remove(x);
        let part = &mut state.parts[i];
        let expelled = g.neighbors(x).intersection(part).iter().find(|&y| g.degree_into(y, part) >= 1);
        part.insert(x);
        if let Some(y) = expelled {
            part.remove(y);
            state.felons.insert(y);
        }
        let now = state.potential_now(g);
        debug_assert!(now < *state.potential.last().expect("seeded"));
        state.potential.push(now);
    }
}

/// Recovers the near-Turán structure of a dense graph, or `None` when its
/// minimum degree is below `⌊(r-2)n/(r-1)⌋` or some part comes out empty.
pub fn decompose(g: &Graph, _k: usize, r: usize) -> Option<DecompositionState> {
    let n = g.n();
    if r < 3 || n == 0 || g.min_degree() < (r - 2) * n / (r - 1) {
        return None;
    }
    let degrees = g.degrees();
    let pivot = (0..n).min_by_key(|&v| (degrees[v], v))?;
    let l = g.neighbors(pivot);
    let seed = greedy_clique(g, &l, r - 2)?;
    let mut parts = Vec::with_capacity(r - 1);
    let mut felons = VertexSet::new();
    let mut placed = VertexSet::new();
    for (i, &vi) in seed.iter().enumerate() {
        let others: VertexSet = seed.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        let mut part = g.common_neighborhood(&others).ok()?.intersection(&l).difference(&g.neighbors(vi));
        part.remove(vi);
        part = part.difference(&placed);
        part.insert(vi);
        placed = placed.union(&part);
        parts.push(part);
    }
    for v in l.difference(&placed).iter() {
        felons.insert(v);
    }
    parts.push(g.vertices().difference(&l).difference(&placed));
    strip_paths(g, &mut parts, &mut felons);
    let mut state = DecompositionState {
        parts,
        felons,
        avoided: VertexSet::new(),
        partial_path: Vec::new(),
        deported: Vec::new(),
        pivot,
        seed_clique: seed,
        potential: Vec::new(),
    };
    reintegrate(g, &mut state);
    if state.parts.iter().any(VertexSet::is_empty) {
        return None;
    }
    Some(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{candidate_layout, extremal_candidate, turan, ExtremalVariant};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn range_set(r: std::ops::Range<usize>) -> VertexSet {
        r.collect()
    }

    fn check_invariants(g: &Graph, s: &DecompositionState) {
        let mut cover = s.felons.clone();
        for p in &s.parts {
            assert!(p.intersection(&cover).is_empty());
            cover = cover.union(p);
            for v in p.iter() {
                assert!(g.degree_into(v, p) <= 1, "part is not a matching");
            }
        }
        assert_eq!(cover, g.vertices());
        for x in s.felons.iter() {
            for p in &s.parts {
                assert!(g.degree_into(x, p) >= 2);
            }
        }
        assert!(s.potential.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn construction_decomposes_into_its_layout() {
        let g = extremal_candidate(24, 5, 4, ExtremalVariant::LargestPart).unwrap();
        let s = decompose(&g, 5, 4).unwrap();
        check_invariants(&g, &s);
        let layout = candidate_layout(24, 5, 4, ExtremalVariant::LargestPart).unwrap();
        assert_eq!(s.felons, range_set(layout.universal));
        let mut parts = s.parts.clone();
        parts.sort_by_key(|p| p.first());
        let expected: Vec<VertexSet> = layout.parts.into_iter().map(range_set).collect();
        assert_eq!(parts, expected);
    }

    #[test]
    fn felon_count_matches_universal_vertices() {
        for (n, k, r) in [(20, 3, 3), (25, 5, 3), (30, 5, 5), (22, 4, 4), (18, 1, 4)] {
            let g = extremal_candidate(n, k, r, ExtremalVariant::LargestPart).unwrap();
            let s = decompose(&g, k, r).unwrap();
            check_invariants(&g, &s);
            assert_eq!(s.felons.len(), (k - 1) / 2, "n={n} k={k} r={r}");
            assert_eq!(s.in_part_edges(&g).len(), usize::from(k % 2 == 0));
        }
    }

    #[test]
    fn bipartite_turan_splits_cleanly() {
        let g = turan(12, 2).unwrap();
        let s = decompose(&g, 1, 3).unwrap();
        check_invariants(&g, &s);
        assert_eq!(s.parts.len(), 2);
        assert!(s.felons.is_empty());
        assert_eq!(s.part_sizes(), vec![6, 6]);
    }

    #[test]
    fn sparse_graphs_have_no_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(10..30);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.2) {
                        g.set(u, v);
                    }
                }
            }
            assert!(decompose(&g, 3, 4).is_none());
        }
    }

    #[test]
    fn extra_edge_survives_as_matching_edge() {
        let g = extremal_candidate(20, 3, 3, ExtremalVariant::LargestPart).unwrap().with_edge(12, 15).unwrap();
        let s = decompose(&g, 3, 3).unwrap();
        check_invariants(&g, &s);
        assert_eq!(s.in_part_edges(&g), vec![(12, 15)]);
        assert_eq!(s.felons, range_set(0..1));
    }

    #[test]
    fn deportation_bookkeeping() {
        let g = extremal_candidate(20, 3, 3, ExtremalVariant::LargestPart).unwrap().with_edge(12, 15).unwrap();
        let mut s = decompose(&g, 3, 3).unwrap();
        s.deport(12, 15);
        assert!(s.felons.contains(12) && s.part_of(12).is_none());
        assert!(s.avoided.contains(15));
        assert_eq!(s.anchor_core(12), vec![12, 15]);
        assert_eq!(s.anchor_core(0), vec![0]);
    }
}
