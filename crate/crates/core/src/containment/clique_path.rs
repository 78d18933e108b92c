//! Exact clique-path search.
//!
//! Hinges `p_1, p_2, ..` are chosen first; after each new hinge the clique
//! between it and its predecessor is completed from their common
//! neighborhood. Fill vertices of one clique are chosen as an increasing
//! combination, and every choice is restricted to the lowest unused member
//! of its twin class.

use super::twins::twin_classes;
use super::witness::Witness;
use super::SearchOptions;
use crate::bits::{Row, VertexSet};
use crate::constructions::clique_path;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::PatternSpec;

struct PathSearch<'a, R: Row> {
    adj: &'a [R],
    classes: Vec<R>,
    nontrivial: Vec<bool>,
    deg: Vec<usize>,
    k: usize,
    r: usize,
    used: R,
    hinges: Vec<usize>,
    fills: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
}

impl<'a, R: Row> PathSearch<'a, R> {
    #[inline]
    fn canonical(&self, w: usize) -> bool {
        !self.nontrivial[w] || self.classes[w].and_not(&self.used).lowest() == Some(w)
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        match self.budget {
            Some(b) if self.nodes > b => Err(Error::BudgetExhausted(b)),
            _ => Ok(()),
        }
    }

    fn run(&mut self) -> Result<bool> {
        let n = self.adj.len();
        let first_deg = self.r - 1;
        for p in 0..n {
            if self.deg[p] < first_deg || !self.canonical(p) {
                continue;
            }
            self.tick()?;
            self.used.insert(p);
            self.hinges.push(p);
            if self.extend()? {
                return Ok(true);
            }
            self.hinges.pop();
            self.used.remove(p);
        }
        Ok(false)
    }

    /// Hinges `p_1..p_i` placed and cliques `1..i-1` complete.
    fn extend(&mut self) -> Result<bool> {
        let i = self.hinges.len();
        if i == self.k + 1 {
            return Ok(true);
        }
        let p = self.hinges[i - 1];
        let need = if i < self.k { 2 * (self.r - 1) } else { self.r - 1 };
        let cands = self.adj[p].and_not(&self.used);
        let mut cur = cands.lowest();
        while let Some(q) = cur {
            cur = cands.next_after(q);
            if self.deg[q] < need || !self.canonical(q) {
                continue;
            }
            let common = self.adj[p].and(&self.adj[q]).and_not(&self.used);
            if common.count() < self.r - 2 {
                continue;
            }
            self.tick()?;
            self.used.insert(q);
            self.hinges.push(q);
            if self.fill(&common, self.r - 2)? {
                return Ok(true);
            }
            self.hinges.pop();
            self.used.remove(q);
        }
        Ok(false)
    }

    fn fill(&mut self, cand: &R, remaining: usize) -> Result<bool> {
        if remaining == 0 {
            let i = self.hinges.len();
            if i <= self.k {
                let q = self.hinges[i - 1];
                if self.adj[q].and_not(&self.used).count() < self.r - 1 {
                    return Ok(false);
                }
            }
            return self.extend();
        }
        let mut rest = cand.clone();
        while rest.count() >= remaining {
            let w = rest.lowest().expect("non-empty");
            rest.remove(w);
            if !self.canonical(w) {
                continue;
            }
            self.tick()?;
            self.used.insert(w);
            self.fills.push(w);
            if self.fill(&rest.and(&self.adj[w]), remaining - 1)? {
                return Ok(true);
            }
            self.fills.pop();
            self.used.remove(w);
        }
        Ok(false)
    }
}

fn search<R: Row>(g: &Graph, k: usize, r: usize, opts: &SearchOptions) -> Result<Option<Vec<usize>>> {
    let adj: Vec<R> = g.rows();
    let classes: Vec<R> = twin_classes(g);
    let nontrivial = classes.iter().map(|c| c.count() > 1).collect();
    let mut s = PathSearch {
        adj: &adj,
        classes,
        nontrivial,
        deg: g.degrees(),
        k,
        r,
        used: R::empty(),
        hinges: Vec::with_capacity(k + 1),
        fills: Vec::with_capacity(k * (r - 2)),
        nodes: 0,
        budget: opts.node_budget,
    };
    if !s.run()? {
        return Ok(None);
    }
    let mut map = s.hinges;
    map.extend(s.fills);
    Ok(Some(map))
}

/// Finds a copy of `P_{k,r}` in `g`, exactly.
pub fn contains_clique_path_with(g: &Graph, k: usize, r: usize, opts: &SearchOptions) -> Result<Option<Witness>> {
    let pattern = clique_path(k, r)?;
    if pattern.n() > g.n() {
        return Ok(None);
    }
    let map = if g.n() <= 64 { search::<u64>(g, k, r, opts)? } else { search::<VertexSet>(g, k, r, opts)? };
    Ok(map.map(|map| {
        let w = Witness::new(PatternSpec::CliquePath { k, r }, map);
        debug_assert!(w.is_valid(g));
        w
    }))
}

pub fn contains_clique_path(g: &Graph, k: usize, r: usize) -> Result<Option<Witness>> {
    contains_clique_path_with(g, k, r, &SearchOptions::default())
}

/// Largest `k` with a `P_{k,r}` in `g`; 0 when `g` has no `K_r`.
pub fn longest_clique_path(g: &Graph, r: usize) -> Result<usize> {
    longest_clique_path_with(g, r, &SearchOptions::default())
}

pub fn longest_clique_path_with(g: &Graph, r: usize, opts: &SearchOptions) -> Result<usize> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!("r must be >= 3, got {r}")));
    }
    let mut k = 0;
    while k * (r - 1) + r <= g.n() && contains_clique_path_with(g, k + 1, r, opts)?.is_some() {
        k += 1;
    }
    Ok(k)
}
