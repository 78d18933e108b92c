//! Structural witness extraction for dense graphs.
//!
//! The pipeline peels low-degree vertices, splits the core into `r-1`
//! near-independent parts plus felons, and then assembles a clique-path from
//! felon-like anchors: felons, and endpoints of in-part edges deported to the
//! felons. Anchors are chained by connectors (two cliques meeting in a hinge)
//! and the chain is closed by caps (cliques through a single anchor). Every
//! witness is validated against the input graph before it is returned; small
//! inputs fall back to the exact search when the structure is missing.

mod assemble;
mod decompose;
mod peel;

pub use assemble::{avoiding_extension, build_connector, Connector};
pub use decompose::{decompose, DecompositionState};
pub use peel::{peel, Peeled};

use crate::constructions::clique_path;
use crate::containment::{contains_clique_path, Witness};
use crate::error::Result;
use crate::graph::Graph;
use crate::pattern::PatternSpec;
use crate::SCHEMA_VERSION;
use serde::Serialize;

/// Largest order for which the exact search backs up the pipeline.
pub const DEFAULT_FALLBACK_CAP: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    pub fallback_cap: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self { fallback_cap: DEFAULT_FALLBACK_CAP }
    }
}

/// Step at which the structural route gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailedStep {
    /// The peeled core has no near-Turán structure.
    Decomposition,
    /// Too few felons and in-part edges to chain `k` cliques.
    AnchorCount,
    /// No cap or connector could be completed for any anchor choice.
    Assembly,
    /// The assembled graph was not a clique-path of the input.
    Validation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Structural,
    ExactFallback,
    /// Structural route failed above the fallback cap.
    Unresolved,
    /// Exact search ran and found nothing.
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// Vertices removed by peeling.
    pub peeled: usize,
    pub part_sizes: Vec<usize>,
    pub felons: usize,
    pub in_part_edges: usize,
    /// `e + 2f` along the reintegration loop.
    pub potential: Vec<usize>,
    /// Felons and deported vertices in chain order.
    pub anchors: Vec<usize>,
    pub failed_step: Option<FailedStep>,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub witness: Option<Witness>,
    pub report: Report,
}

/// Anchor choices for `k` cliques, fewest anchors first and felons
/// preferred: `j` felons and `e` in-part edges give `2j + e` cliques.
fn anchor_options(felons: usize, edges: usize, k: usize) -> Vec<(usize, usize)> {
    let max_edges = edges.min(2.max(felons + 1));
    let mut out = Vec::new();
    for total in 1..=felons + max_edges {
        for e in 0..=max_edges.min(total) {
            let j = total - e;
            if j <= felons && 2 * j + e >= k {
                out.push((j, e));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Anchor {
    Felon(usize),
    /// In-part edge whose endpoints are consecutive hinges.
    Edge(usize, usize),
}

/// Chain with deported edge endpoints: `[edge] felons [edge]`, every join a
/// connector. Cliques come back in path order.
fn assemble_deported(g: &Graph, state: &mut DecompositionState, chain: &[usize], k: usize) -> Option<Vec<Vec<usize>>> {
    let deported = |x: usize, s: &DecompositionState| s.deported.iter().any(|&(a, _)| a == x);
    let mut cliques: Vec<Vec<usize>> = Vec::with_capacity(k);
    let (first, last) = (chain[0], *chain.last().expect("non-empty chain"));
    if !deported(first, state) || chain.len() == 1 {
        cliques.push(assemble::claim(g, state, &state.anchor_core(first))?.map);
    }
    for pair in chain.windows(2) {
        match k - cliques.len() {
            0 => break,
            1 => {
                cliques.push(assemble::claim(g, state, &state.anchor_core(pair[0]))?.map);
                break;
            }
            _ => {
                let c = build_connector(g, state, pair[0], pair[1])?;
                cliques.push(c.first.map);
                cliques.push(c.second.map);
            }
        }
    }
    if cliques.len() < k && !deported(last, state) {
        cliques.push(assemble::claim(g, state, &[last])?.map);
    }
    (cliques.len() >= k).then(|| {
        cliques.truncate(k);
        cliques
    })
}

/// Chain in which each in-part edge `ab` is entered at `a` and left at `b`;
/// felon pairs are joined by connectors.
fn assemble_direct(g: &Graph, state: &mut DecompositionState, chain: &[Anchor], k: usize) -> Option<Vec<Vec<usize>>> {
    let mut cliques: Vec<Vec<usize>> = Vec::with_capacity(k);
    match (chain[0], chain.get(1)) {
        (Anchor::Felon(x), _) => cliques.push(assemble::claim(g, state, &[x])?.map),
        // a following edge is entered at its first endpoint, drawn into this clique
        (Anchor::Edge(a, b), Some(&Anchor::Edge(c, _))) => {
            cliques.push(assemble::edge_clique(g, state, a, b, Some(c))?.map)
        }
        (Anchor::Edge(a, b), _) => cliques.push(assemble::edge_clique(g, state, a, b, None)?.map),
    }
    for (i, pair) in chain.windows(2).enumerate() {
        if cliques.len() >= k {
            break;
        }
        let next_entry = match chain.get(i + 2) {
            Some(&Anchor::Edge(c, _)) => Some(c),
            _ => None,
        };
        match (pair[0], pair[1]) {
            (Anchor::Felon(x), Anchor::Felon(y)) => {
                if k - cliques.len() == 1 {
                    cliques.push(assemble::claim(g, state, &[x])?.map);
                } else {
                    let c = build_connector(g, state, x, y)?;
                    cliques.push(c.first.map);
                    cliques.push(c.second.map);
                }
            }
            (Anchor::Felon(x), Anchor::Edge(a, b)) => {
                cliques.push(assemble::claim(g, state, &[x, a])?.map);
                if cliques.len() < k {
                    cliques.push(assemble::edge_clique(g, state, a, b, next_entry)?.map);
                }
            }
            (Anchor::Edge(_, b), Anchor::Felon(y)) => cliques.push(assemble::claim(g, state, &[b, y])?.map),
            (Anchor::Edge(..), Anchor::Edge(a, b)) => {
                cliques.push(assemble::edge_clique(g, state, a, b, next_entry)?.map)
            }
        }
    }
    if let (true, Some(&Anchor::Felon(x))) = (cliques.len() < k, chain.last()) {
        cliques.push(assemble::claim(g, state, &[x])?.map);
    }
    (cliques.len() >= k).then(|| {
        cliques.truncate(k);
        cliques
    })
}

/// Edges go between consecutive felons first, then to the two ends.
fn direct_chain(felons: &[usize], edges: &[(usize, usize)]) -> Option<Vec<Anchor>> {
    let inner = edges.len().min(felons.len().saturating_sub(1));
    if edges.len() - inner > 2 {
        return None;
    }
    let mut chain = Vec::with_capacity(felons.len() + edges.len());
    let outer = &edges[inner..];
    if let Some(&(a, b)) = outer.first() {
        chain.push(Anchor::Edge(b, a));
    }
    for (i, &x) in felons.iter().enumerate() {
        chain.push(Anchor::Felon(x));
        if i < inner {
            chain.push(Anchor::Edge(edges[i].0, edges[i].1));
        }
    }
    if let Some(&(a, b)) = outer.get(1) {
        chain.push(Anchor::Edge(a, b));
    }
    Some(chain)
}

/// Lays cliques `C_1..C_k` out in the vertex order of [`clique_path`].
fn path_map(cliques: &[Vec<usize>], r: usize) -> Option<Vec<usize>> {
    let k = cliques.len();
    let mut hinges = Vec::with_capacity(k + 1);
    let shared = |a: &[usize], b: &[usize]| -> Option<usize> {
        let mut common = a.iter().copied().filter(|v| b.contains(v));
        let v = common.next()?;
        common.next().is_none().then_some(v)
    };
    let inner: Vec<usize> = cliques.windows(2).map(|w| shared(&w[0], &w[1])).collect::<Option<_>>()?;
    let lowest_other = |c: &[usize], skip: &[usize]| c.iter().copied().filter(|v| !skip.contains(v)).min();
    if k == 1 {
        let mut c = cliques[0].clone();
        c.sort_unstable();
        hinges.extend_from_slice(&c[..2]);
    } else {
        hinges.push(lowest_other(&cliques[0], &inner[..1])?);
        hinges.extend_from_slice(&inner);
        hinges.push(lowest_other(&cliques[k - 1], &inner[k - 2..])?);
    }
    let mut map = hinges.clone();
    for (i, c) in cliques.iter().enumerate() {
        let mut fills: Vec<usize> = c.iter().copied().filter(|v| *v != hinges[i] && *v != hinges[i + 1]).collect();
        fills.sort_unstable();
        if fills.len() != r - 2 {
            return None;
        }
        map.extend(fills);
    }
    Some(map)
}

/// Anchor chain with its cliques in path order, if assembly succeeded.
type Attempt = (Vec<usize>, Option<Vec<Vec<usize>>>);

fn structural(g: &Graph, k: usize, r: usize, report: &mut Report) -> Option<Witness> {
    let peeled = peel(g, k, r).ok()?;
    report.peeled = peeled.removed.len();
    let core = &peeled.core;
    let Some(state) = decompose(core, k, r) else {
        report.failed_step = Some(FailedStep::Decomposition);
        return None;
    };
    report.part_sizes = state.part_sizes();
    report.felons = state.felons.len();
    report.potential = state.potential.clone();
    let edges = state.in_part_edges(core);
    report.in_part_edges = edges.len();
    let mut felons: Vec<usize> = state.felons.iter().collect();
    let good = state.good_vertices();
    felons.sort_by_key(|&x| (std::cmp::Reverse(core.degree_into(x, &good)), x));
    let options = anchor_options(felons.len(), edges.len(), k);
    if options.is_empty() {
        report.failed_step = Some(FailedStep::AnchorCount);
        return None;
    }
    for (j, e) in options {
        let mut attempts: Vec<Attempt> = Vec::new();
        let mut reserved = state.clone();
        for &(a, b) in &edges[..e] {
            reserved.avoided.insert(a);
            reserved.avoided.insert(b);
        }
        if e <= 2 {
            let mut trial = state.clone();
            for &(a, b) in &edges[..e] {
                trial.deport(a, b);
            }
            let mut chain: Vec<usize> = Vec::with_capacity(j + e);
            chain.extend(edges[..e.min(1)].iter().map(|&(a, _)| a));
            chain.extend_from_slice(&felons[..j]);
            chain.extend(edges[1.min(e)..e].iter().map(|&(a, _)| a));
            let cliques = assemble_deported(core, &mut trial, &chain, k);
            attempts.push((chain, cliques));
        }
        if let Some(chain) = direct_chain(&felons[..j], &edges[..e]) {
            let mut trial = reserved.clone();
            let cliques = assemble_direct(core, &mut trial, &chain, k);
            let vertices = chain.iter().map(|a| match *a {
                Anchor::Felon(x) | Anchor::Edge(x, _) => x,
            });
            attempts.push((vertices.collect(), cliques));
        }
        for (chain, cliques) in attempts {
            let Some(cliques) = cliques else {
                continue;
            };
            report.anchors = peeled.to_input(&chain);
            let map = path_map(&cliques, r).map(|m| peeled.to_input(&m));
            match map.map(|m| Witness::new(PatternSpec::CliquePath { k, r }, m)) {
                Some(w) if w.is_valid(g) => {
                    report.failed_step = None;
                    return Some(w);
                }
                _ => {
                    report.failed_step = Some(FailedStep::Validation);
                    return None;
                }
            }
        }
    }
    report.failed_step = Some(FailedStep::Assembly);
    None
}

/// Finds a `P_{k,r}` in `g` through the structural route, falling back to
/// exact search when `g` has at most `fallback_cap` vertices.
pub fn extract_witness(g: &Graph, k: usize, r: usize) -> Result<Extraction> {
    extract_witness_with(g, k, r, &PipelineConfig::default())
}

pub fn extract_witness_with(g: &Graph, k: usize, r: usize, config: &PipelineConfig) -> Result<Extraction> {
    clique_path(k, r)?;
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        n: g.n(),
        k,
        r,
        peeled: 0,
        part_sizes: Vec::new(),
        felons: 0,
        in_part_edges: 0,
        potential: Vec::new(),
        anchors: Vec::new(),
        failed_step: None,
        method: Method::Structural,
    };
    if let Some(w) = structural(g, k, r, &mut report) {
        return Ok(Extraction { witness: Some(w), report });
    }
    if g.n() > config.fallback_cap {
        report.method = Method::Unresolved;
        return Ok(Extraction { witness: None, report });
    }
    let witness = contains_clique_path(g, k, r)?;
    report.method = if witness.is_some() { Method::ExactFallback } else { Method::Free };
    Ok(Extraction { witness, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{candidate_layout, extremal_candidate, ExtremalVariant};
    use crate::containment::generic_contains;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn plus_part_edge(n: usize, k: usize, r: usize, part: usize) -> Graph {
        let layout = candidate_layout(n, k, r, ExtremalVariant::LargestPart).unwrap();
        let p = &layout.parts[part];
        extremal_candidate(n, k, r, ExtremalVariant::LargestPart).unwrap().with_edge(p.start, p.end - 1).unwrap()
    }

    #[test]
    fn anchor_options_prefer_few_anchors() {
        assert_eq!(anchor_options(2, 1, 5), vec![(2, 1)]);
        assert_eq!(anchor_options(3, 0, 5), vec![(3, 0)]);
        assert_eq!(anchor_options(3, 1, 5), vec![(3, 0), (2, 1), (3, 1)]);
        assert_eq!(anchor_options(0, 1, 1), vec![(0, 1)]);
        assert!(anchor_options(1, 0, 3).is_empty());
    }

    #[test]
    fn deported_edge_completes_the_path() {
        let g = plus_part_edge(24, 5, 3, 0);
        let ext = extract_witness(&g, 5, 3).unwrap();
        let w = ext.witness.expect("witness");
        assert!(w.is_valid(&g));
        assert_eq!(ext.report.method, Method::Structural);
        assert_eq!(ext.report.felons, 2);
        assert!(generic_contains(&g, &clique_path(5, 3).unwrap()).is_some());
    }

    #[test]
    fn construction_yields_nothing() {
        let g = extremal_candidate(24, 5, 3, ExtremalVariant::LargestPart).unwrap();
        let ext = extract_witness(&g, 5, 3).unwrap();
        assert!(ext.witness.is_none());
        assert_eq!(ext.report.failed_step, Some(FailedStep::AnchorCount));
        assert_eq!(ext.report.method, Method::Unresolved);
    }

    #[test]
    fn pattern_with_isolated_vertices_uses_fallback() {
        let g = clique_path(4, 3).unwrap().disjoint_union(&Graph::empty(3));
        let ext = extract_witness(&g, 4, 3).unwrap();
        assert!(ext.witness.unwrap().is_valid(&g));
        assert_eq!(ext.report.method, Method::ExactFallback);
    }

    #[test]
    fn structural_route_over_parameter_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in [1usize, 3, 5] {
            for r in 3..=5 {
                for n in [22, 30, 40] {
                    let f = (k - 1) / 2;
                    let parts = r - 1;
                    let g = plus_part_edge(n, k, r, rng.gen_range(0..parts));
                    if (n - f) / parts < k + 2 {
                        continue;
                    }
                    let ext = extract_witness(&g, k, r).unwrap();
                    let w = ext.witness.unwrap_or_else(|| panic!("n={n} k={k} r={r}: {:?}", ext.report));
                    assert!(w.is_valid(&g));
                }
            }
        }
    }

    #[test]
    fn even_k_uses_felons_and_the_built_in_edge() {
        // G_{n,4,4} has one felon and one in-part edge; a second edge adds one clique
        let layout = candidate_layout(30, 4, 4, ExtremalVariant::LargestPart).unwrap();
        let p = &layout.parts[1];
        let g = extremal_candidate(30, 4, 4, ExtremalVariant::LargestPart)
            .unwrap()
            .with_edge(p.start, p.start + 1)
            .unwrap();
        let ext = extract_witness(&g, 4, 4).unwrap();
        assert!(ext.witness.unwrap().is_valid(&g));
        let g0 = extremal_candidate(30, 4, 4, ExtremalVariant::LargestPart).unwrap();
        assert!(extract_witness(&g0, 4, 4).unwrap().witness.is_none());
    }

    #[test]
    fn tight_instances_use_edge_endpoints_as_hinges() {
        // P_{5,5} on 21 vertices must use every vertex
        let g = plus_part_edge(21, 5, 5, 3);
        let ext = extract_witness(&g, 5, 5).unwrap();
        assert!(ext.witness.unwrap().is_valid(&g));
        // two in-part edges and no felons
        let g = plus_part_edge(20, 2, 3, 1);
        let ext = extract_witness(&g, 2, 3).unwrap();
        assert!(ext.witness.unwrap().is_valid(&g));
        assert_eq!(ext.report.in_part_edges, 2);
    }

    #[test]
    fn path_map_orders_like_the_pattern() {
        let pattern = clique_path(3, 4).unwrap();
        let cliques = vec![vec![0, 1, 4, 5], vec![1, 2, 6, 7], vec![2, 3, 8, 9]];
        let map = path_map(&cliques, 4).unwrap();
        assert_eq!(map, (0..10).collect::<Vec<_>>());
        assert!(Witness::new(PatternSpec::CliquePath { k: 3, r: 4 }, map).is_valid(&pattern));
        assert!(path_map(&[vec![0, 1, 2], vec![0, 1, 3]], 3).is_none());
    }

    #[test]
    fn agrees_with_exact_search_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for trial in 0..150 {
            let n = rng.gen_range(4..=12);
            let p = rng.gen_range(0.3..0.95);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.set(u, v);
                    }
                }
            }
            let (k, r) = ([1, 2, 3][trial % 3], [3, 4][trial / 3 % 2]);
            let ext = extract_witness(&g, k, r).unwrap();
            let oracle = generic_contains(&g, &clique_path(k, r).unwrap());
            assert_eq!(ext.witness.is_some(), oracle.is_some(), "trial {trial}");
            if let Some(w) = ext.witness {
                assert!(w.is_valid(&g));
            }
        }
    }

    #[test]
    fn report_serializes() {
        let g = plus_part_edge(20, 3, 3, 1);
        let ext = extract_witness(&g, 3, 3).unwrap();
        let json = serde_json::to_value(&ext).unwrap();
        assert_eq!(json["report"]["schema_version"], 1);
        assert_eq!(json["report"]["method"], "structural");
        assert_eq!(json["witness"]["pattern"]["kind"], "clique-path");
    }
}
