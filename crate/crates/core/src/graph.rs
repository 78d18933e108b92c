//! Immutable simple undirected graphs stored as adjacency bit rows.

use crate::bits::{Row, VertexSet};
use crate::error::{Error, Result};
use std::fmt;
use std::fmt::Write as _;

/// A simple undirected graph on vertices `0..n`.
///
/// Each vertex owns a row of `stride` 64-bit words. Graphs on at most 64
/// vertices use a single word per row, which is the layout every search in
/// this crate is tuned for; larger graphs transparently use wider rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

/// Degree sequence together with its minimum (0 for the empty graph).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub min_degree: usize,
    pub degrees: Vec<usize>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(64).max(1);
        Graph { n, stride, bits: vec![0; n * stride] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list. Duplicate pairs collapse.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Loop(u));
            }
            g.set(u, v);
        }
        Ok(g)
    }

    pub(crate) fn set(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.stride + v / 64] |= 1 << (v % 64);
        self.bits[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    fn unset(&mut self, u: usize, v: usize) {
        self.bits[u * self.stride + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.stride + u / 64] &= !(1 << (u % 64));
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn row_words(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.row_words(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row_words(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees = self.degrees();
        let min_degree = degrees.iter().copied().min().unwrap_or(0);
        DegreeProfile { min_degree, degrees }
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Intersection of the neighborhoods of `set`; all vertices when `set` is empty.
    pub fn common_neighborhood(&self, set: &VertexSet) -> Result<VertexSet> {
        let mut acc = self.vertices();
        for v in set.iter() {
            self.check_vertex(v)?;
            acc = acc.intersection(&self.neighbors(v));
        }
        Ok(acc)
    }

    /// `|N(v) ∩ set|`
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.neighbors(v).intersection(set).len()
    }

    /// Subgraph induced by `set`, relabelled `0..|set|` in increasing order.
    pub fn induced(&self, set: &VertexSet) -> Result<Graph> {
        let keep = set.to_vec();
        if let Some(&v) = keep.last() {
            self.check_vertex(v)?;
        }
        Ok(self.relabel_unchecked(&keep))
    }

    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut keep = self.vertices();
        keep.remove(v);
        self.induced(&keep)
    }

    /// The graph whose vertex `i` is `order[i]` of `self`. `order` may be a
    /// prefix-free selection; vertices not listed are dropped.
    pub fn relabel(&self, order: &[usize]) -> Result<Graph> {
        let mut seen = VertexSet::with_capacity(self.n);
        for &v in order {
            self.check_vertex(v)?;
            if seen.contains(v) {
                return Err(Error::InvalidParameter(format!("vertex {v} listed twice")));
            }
            seen.insert(v);
        }
        Ok(self.relabel_unchecked(order))
    }

    pub(crate) fn relabel_unchecked(&self, order: &[usize]) -> Graph {
        let mut g = Graph::empty(order.len());
        for (i, &u) in order.iter().enumerate() {
            for (j, &v) in order.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set(i, j);
                }
            }
        }
        g
    }

    /// Join: disjoint union of `self` and `other` plus every cross pair.
    /// Vertices of `self` come first.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.set(u, self.n + v);
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.set(u, v);
        }
        for (u, v) in other.edges() {
            g.set(self.n + u, self.n + v);
        }
        g
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        let mut g = self.clone();
        g.set(u, v);
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.unset(u, v);
        Ok(g)
    }

    /// Adds a new vertex `n` adjacent to `nbrs`.
    pub fn with_vertex(&self, nbrs: &VertexSet) -> Result<Graph> {
        let mut g = Graph::empty(self.n + 1);
        for (u, v) in self.edges() {
            g.set(u, v);
        }
        for v in nbrs.iter() {
            self.check_vertex(v)?;
            g.set(v, self.n);
        }
        Ok(g)
    }

    pub(crate) fn rows<R: Row>(&self) -> Vec<R> {
        (0..self.n).map(|v| R::from_set(&self.neighbors(v))).collect()
    }

    /// Single-word rows; only meaningful when `n <= 64`.
    pub(crate) fn rows64(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        (0..self.n).map(|v| self.bits[v * self.stride]).collect()
    }

    pub(crate) fn from_rows64(rows: &[u64]) -> Graph {
        let n = rows.len();
        let mut g = Graph::empty(n);
        for (u, &row) in rows.iter().enumerate() {
            g.bits[u * g.stride] = row;
        }
        g
    }

    /// True when adjacency is symmetric and loop-free.
    pub fn is_well_formed(&self) -> bool {
        (0..self.n).all(|u| !self.has_edge(u, u) && self.neighbors(u).iter().all(|v| v < self.n && self.has_edge(v, u)))
    }

    /// Graphviz export with one edge per line and vertices named `v0..`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  v{v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  v{u} -- v{v};");
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
