//! Exact extremal numbers by isomorph-free generation of `H`-free graphs.
//!
//! Graphs are grown one vertex at a time along the canonical-deletion tree
//! (see [`crate::isomorphism::canonical_children`]). `H`-freeness is
//! hereditary, so only free graphs are extended. A known `H`-free graph on
//! the target order gives an edge floor; since the deleted vertex always has
//! minimum degree, the floor propagates down the levels and prunes sparse
//! branches without losing any extremal graph.

use crate::constructions::{extremal_candidate, g_count, turan, ExtremalVariant};
use crate::containment::{clique_in, contains, SearchOptions};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::isomorphism::{canonical_children, canonical_form_capped, CanonicalForm, DEFAULT_CANON_CAP};
use crate::pattern::PatternSpec;
use crate::SCHEMA_VERSION;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

/// Default largest order for exhaustive search.
pub const DEFAULT_EXTREMAL_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalConfig {
    /// Largest order accepted; at most [`DEFAULT_CANON_CAP`].
    pub cap: usize,
    /// Abort once this many graphs have been generated.
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    /// Prune levels by the propagated edge floor.
    pub edge_floor: bool,
}

impl Default for ExtremalConfig {
    fn default() -> Self {
        Self { cap: DEFAULT_EXTREMAL_CAP, node_budget: None, time_budget: None, jobs: 0, edge_floor: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Graphs generated over all levels.
    pub nodes: u64,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub pattern: PatternSpec,
    pub ex_value: usize,
    /// Ascending by canonical form.
    pub extremal_graphs: Vec<CanonicalForm>,
    pub stats: SearchStats,
}

enum Freeness {
    /// Only cliques through the new vertex need checking.
    Clique(usize),
    Full,
}

struct Generator<'a> {
    pattern: &'a PatternSpec,
    freeness: Freeness,
    config: &'a ExtremalConfig,
    start: Instant,
}

impl Generator<'_> {
    fn free_child(&self, child: &Graph) -> bool {
        match self.freeness {
            Freeness::Clique(r) => {
                let new = child.n() - 1;
                clique_in(child, &child.neighbors(new), r - 1).is_none()
            }
            Freeness::Full => {
                contains(child, self.pattern, &SearchOptions::default()).expect("unbounded search").is_none()
            }
        }
    }

    fn check_time(&self) -> Result<()> {
        match self.config.time_budget {
            Some(t) if self.start.elapsed() > t => Err(Error::TimeExhausted(t.as_millis() as u64)),
            _ => Ok(()),
        }
    }

    /// Free graphs on `n` vertices with at least `floor[n]` edges.
    fn level(&self, n: usize, floor: &[usize], nodes: &mut u64) -> Result<Vec<CanonicalForm>> {
        let mut level = vec![canonical_form_capped(&Graph::empty(1), 1)?];
        for i in 1..n {
            let min_edges = floor[i + 1];
            let kids: Vec<Vec<CanonicalForm>> = level
                .par_iter()
                .map(|parent| {
                    self.check_time()?;
                    canonical_children(&parent.to_graph(), min_edges, self.config.cap, |c| self.free_child(c))
                })
                .collect::<Result<_>>()?;
            let mut next: Vec<CanonicalForm> = kids.into_iter().flatten().collect();
            next.sort_unstable();
            *nodes += next.len() as u64;
            if let Some(b) = self.config.node_budget {
                if *nodes > b {
                    return Err(Error::BudgetExhausted(b));
                }
            }
            level = next;
        }
        Ok(level)
    }
}

/// Size of the largest clique of `h`; a Turán graph one class short is
/// therefore `h`-free.
fn clique_number(h: &Graph) -> usize {
    let mut w = usize::from(h.n() > 0);
    while clique_in(h, &h.vertices(), w + 1).is_some() {
        w += 1;
    }
    w
}

/// Edge count of a verified `pattern`-free graph on `n` vertices.
fn known_free_edges(n: usize, pattern: &PatternSpec, h: &Graph) -> Result<usize> {
    let mut best = turan(n, clique_number(h) - 1)?.edge_count();
    if let PatternSpec::CliquePath { k, r } = *pattern {
        if let Ok(g) = extremal_candidate(n, k, r, ExtremalVariant::LargestPart) {
            if g.edge_count() > best && contains(&g, pattern, &SearchOptions::default())?.is_none() {
                best = g.edge_count();
            }
        }
    }
    Ok(best)
}

/// `floor[i]`: fewest edges an order-`i` ancestor of an order-`n` graph with
/// `lower` edges can have.
fn edge_floors(n: usize, lower: usize) -> Vec<usize> {
    let mut floor = vec![0; n + 1];
    floor[n] = lower;
    for i in (2..=n).rev() {
        floor[i - 1] = floor[i] - 2 * floor[i] / i;
    }
    floor
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// `ex(n, H)` together with every extremal graph up to isomorphism.
pub fn ex_number(n: usize, pattern: &PatternSpec) -> Result<ExtremalRecord> {
    ex_number_with(n, pattern, &ExtremalConfig::default())
}

pub fn ex_number_with(n: usize, pattern: &PatternSpec, config: &ExtremalConfig) -> Result<ExtremalRecord> {
    let start = Instant::now();
    let h = pattern.graph()?;
    if h.edge_count() == 0 {
        return Err(Error::Pattern(format!("{pattern} has no edges")));
    }
    if config.cap > DEFAULT_CANON_CAP {
        return Err(Error::InvalidParameter(format!(
            "enumeration cap {} exceeds the supported maximum {DEFAULT_CANON_CAP}",
            config.cap
        )));
    }
    if n > config.cap {
        return Err(Error::CapExceeded { n, cap: config.cap });
    }
    let freeness = match *pattern {
        PatternSpec::Clique { r } | PatternSpec::CliquePath { k: 1, r } => Freeness::Clique(r),
        _ => Freeness::Full,
    };
    let generator = Generator { pattern, freeness, config, start };
    let mut nodes = 0;
    let graphs = if n == 0 {
        vec![canonical_form_capped(&Graph::empty(0), 0)?]
    } else {
        let lower = if config.edge_floor { known_free_edges(n, pattern, &h)? } else { 0 };
        let floor = edge_floors(n, lower);
        with_pool(config.jobs, || generator.level(n, &floor, &mut nodes))??
    };
    let ex_value = graphs.iter().map(CanonicalForm::edge_count).max().expect("the empty graph is free");
    let extremal_graphs = graphs.into_iter().filter(|g| g.edge_count() == ex_value).collect();
    Ok(ExtremalRecord {
        n,
        pattern: pattern.clone(),
        ex_value,
        extremal_graphs,
        stats: SearchStats { nodes, wall_ms: start.elapsed().as_millis() as u64 },
    })
}

pub fn ex_range(
    ns: std::ops::RangeInclusive<usize>,
    pattern: &PatternSpec,
    config: &ExtremalConfig,
) -> Result<Vec<ExtremalRecord>> {
    ns.map(|n| ex_number_with(n, pattern, config)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub n: usize,
    pub ex_value: usize,
    /// `None` when `G_{n,k,r}` is undefined at this order.
    pub g_count: Option<usize>,
    #[serde(rename = "match")]
    pub matches: bool,
    /// The extremal graphs are exactly the candidate variants, up to isomorphism.
    pub extremal_matches_construction: bool,
}

/// Compares exact `ex(n, P_{k,r})` with `g_{n,k,r}` over a range of orders.
/// Disagreement is data, never an error.
pub fn verify_theorem(
    ns: std::ops::RangeInclusive<usize>,
    k: usize,
    r: usize,
    config: &ExtremalConfig,
) -> Result<Vec<VerifyRow>> {
    let pattern = PatternSpec::CliquePath { k, r };
    pattern.validate()?;
    ns.map(|n| {
        let rec = ex_number_with(n, &pattern, config)?;
        let g = g_count(n, k, r).ok();
        let variants: BTreeSet<CanonicalForm> = ExtremalVariant::ALL
            .iter()
            .filter_map(|&v| extremal_candidate(n, k, r, v).ok())
            .map(|c| canonical_form_capped(&c, config.cap))
            .collect::<Result<_>>()?;
        let found: BTreeSet<CanonicalForm> = rec.extremal_graphs.iter().copied().collect();
        Ok(VerifyRow {
            n,
            ex_value: rec.ex_value,
            g_count: g,
            matches: g == Some(rec.ex_value),
            extremal_matches_construction: !variants.is_empty() && variants == found,
        })
    })
    .collect()
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

/// `schema_version,n,pattern,ex,g,match,extremal_count`; `g` and `match` are
/// empty for patterns other than clique-paths or undefined candidates.
pub fn records_to_csv(records: &[ExtremalRecord]) -> String {
    csv_string(|w| {
        w.write_record(["schema_version", "n", "pattern", "ex", "g", "match", "extremal_count"])?;
        for rec in records {
            let g = match rec.pattern {
                PatternSpec::CliquePath { k, r } => g_count(rec.n, k, r).ok(),
                _ => None,
            };
            w.write_record([
                SCHEMA_VERSION.to_string(),
                rec.n.to_string(),
                rec.pattern.to_string(),
                rec.ex_value.to_string(),
                g.map_or(String::new(), |g| g.to_string()),
                g.map_or(String::new(), |g| (g == rec.ex_value).to_string()),
                rec.extremal_graphs.len().to_string(),
            ])?;
        }
        Ok(())
    })
}

/// Full records; wall times only when `timings` is set so that output is
/// otherwise reproducible byte for byte.
pub fn records_to_json(records: &[ExtremalRecord], timings: bool) -> serde_json::Value {
    let mut recs = serde_json::to_value(records).expect("records serialize");
    if !timings {
        for rec in recs.as_array_mut().expect("array") {
            rec["stats"].as_object_mut().expect("stats object").remove("wall_ms");
        }
    }
    serde_json::json!({ "schema_version": SCHEMA_VERSION, "records": recs })
}

pub fn verify_to_csv(rows: &[VerifyRow]) -> String {
    csv_string(|w| {
        w.write_record(["schema_version", "n", "ex", "g", "match", "extremal_matches_construction"])?;
        for row in rows {
            w.write_record([
                SCHEMA_VERSION.to_string(),
                row.n.to_string(),
                row.ex_value.to_string(),
                row.g_count.map_or(String::new(), |g| g.to_string()),
                row.matches.to_string(),
                row.extremal_matches_construction.to_string(),
            ])?;
        }
        Ok(())
    })
}

pub fn verify_to_json(rows: &[VerifyRow]) -> serde_json::Value {
    serde_json::json!({ "schema_version": SCHEMA_VERSION, "rows": rows })
}
