//! Plain injective-embedding backtracking; the independent oracle for the
//! specialized searchers.

use super::witness::Witness;
use super::SearchOptions;
use crate::bits::{Row, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::PatternSpec;

/// Pattern vertices by descending degree, each next vertex preferring the
/// most already-ordered neighbors.
fn pattern_order(h: &Graph) -> Vec<usize> {
    let deg = h.degrees();
    let mut order = Vec::with_capacity(h.n());
    let mut placed = vec![false; h.n()];
    let mut links = vec![0usize; h.n()];
    for _ in 0..h.n() {
        let next = (0..h.n())
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| (links[a], deg[a]).cmp(&(links[b], deg[b])).then(b.cmp(&a)))
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for u in h.neighbors(next).iter() {
            links[u] += 1;
        }
    }
    order
}

struct Embed<'a, R: Row> {
    host: &'a [R],
    host_deg: Vec<usize>,
    all: R,
    order: Vec<usize>,
    /// For each position, the earlier positions adjacent to it.
    back: Vec<Vec<usize>>,
    pat_deg: Vec<usize>,
    image: Vec<usize>,
    used: R,
    nodes: u64,
    budget: Option<u64>,
}

impl<R: Row> Embed<'_, R> {
    fn go(&mut self, pos: usize) -> Result<bool> {
        if pos == self.order.len() {
            return Ok(true);
        }
        let mut cand = self.all.and_not(&self.used);
        for &b in &self.back[pos] {
            cand = cand.and(&self.host[self.image[b]]);
        }
        let need = self.pat_deg[self.order[pos]];
        let mut cur = cand.lowest();
        while let Some(v) = cur {
            cur = cand.next_after(v);
            if self.host_deg[v] < need {
                continue;
            }
            self.nodes += 1;
            if let Some(b) = self.budget {
                if self.nodes > b {
                    return Err(Error::BudgetExhausted(b));
                }
            }
            self.image.push(v);
            self.used.insert(v);
            if self.go(pos + 1)? {
                return Ok(true);
            }
            self.used.remove(v);
            self.image.pop();
        }
        Ok(false)
    }
}

fn embed<R: Row>(g: &Graph, h: &Graph, opts: &SearchOptions) -> Result<Option<Vec<usize>>> {
    let order = pattern_order(h);
    let mut pos_of = vec![0; h.n()];
    for (i, &v) in order.iter().enumerate() {
        pos_of[v] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &v)| h.neighbors(v).iter().map(|u| pos_of[u]).filter(|&p| p < i).collect())
        .collect();
    let host: Vec<R> = g.rows();
    let mut e = Embed {
        host: &host,
        host_deg: g.degrees(),
        all: R::from_set(&g.vertices()),
        order,
        back,
        pat_deg: h.degrees(),
        image: Vec::with_capacity(h.n()),
        used: R::empty(),
        nodes: 0,
        budget: opts.node_budget,
    };
    if !e.go(0)? {
        return Ok(None);
    }
    let mut map = vec![0; h.n()];
    for (i, &v) in e.order.iter().enumerate() {
        map[v] = e.image[i];
    }
    Ok(Some(map))
}

/// Finds any copy of `h` in `g` as a (not necessarily induced) subgraph.
pub fn generic_contains(g: &Graph, h: &Graph) -> Option<Witness> {
    generic_contains_with(g, h, &SearchOptions::default()).expect("unbounded search cannot exhaust a budget")
}

pub fn generic_contains_with(g: &Graph, h: &Graph, opts: &SearchOptions) -> Result<Option<Witness>> {
    if h.n() > g.n() {
        return Ok(None);
    }
    let map = if g.n() <= 64 { embed::<u64>(g, h, opts)? } else { embed::<VertexSet>(g, h, opts)? };
    Ok(map.map(|m| Witness::new(PatternSpec::Explicit(h.clone()), m)))
}

/// Generic search for a structured pattern; the witness keeps `pattern`.
pub fn generic_contains_pattern(g: &Graph, pattern: &PatternSpec, opts: &SearchOptions) -> Result<Option<Witness>> {
    let h = pattern.graph()?;
    Ok(generic_contains_with(g, &h, opts)?.map(|w| Witness::new(pattern.clone(), w.map)))
}
