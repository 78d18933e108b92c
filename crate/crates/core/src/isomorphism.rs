//! Canonical forms for small graphs and the augmentation step of
//! isomorph-free generation.
//!
//! The canonical form of a graph is the lexicographically maximal
//! column-major upper-triangle bit string (graph6 bit order) over all vertex
//! orders that list the colour classes of a degree-seeded colour refinement
//! in a fixed order, highest degree first. Vertices of the final colour class
//! therefore have minimum degree, and the last canonical vertex is the
//! canonical deletion vertex used by generation.

use crate::bits::{Ones, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Default vertex cap for canonical labelling.
pub const DEFAULT_CANON_CAP: usize = 10;
/// Hard limit: `C(16, 2) = 120` bits fit the form's `u128`.
pub const MAX_CANON_N: usize = 16;

/// Isomorphism-class representative: vertex count and the canonical
/// adjacency bit string, left-aligned in a `u128` (first bit most significant).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    bits: u128,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// The canonically relabelled graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::empty(n);
        let mut t = 0;
        for v in 1..n {
            for u in 0..v {
                if self.bits >> (127 - t) & 1 == 1 {
                    g.set(u, v);
                }
                t += 1;
            }
        }
        g
    }

    pub fn to_graph6(&self) -> String {
        to_graph6(&self.to_graph())
    }

    pub fn edge_count(&self) -> usize {
        self.bits.count_ones() as usize
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_graph6())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_graph6())
    }
}

/// A canonical form together with its canonical labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    pub form: CanonicalForm,
    /// `order[i]` is the input vertex placed at canonical position `i`.
    pub order: Vec<usize>,
}

/// Colour refinement seeded by degree (descending). Returns colours in
/// `0..classes`; colour order is isomorphism invariant.
fn refine(rows: &[u64]) -> Vec<u32> {
    let n = rows.len();
    let deg: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let mut levels: Vec<u32> = deg.clone();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();
    let mut color: Vec<u32> = deg.iter().map(|d| levels.iter().position(|l| l == d).unwrap() as u32).collect();
    let mut classes = levels.len();
    loop {
        if classes == n {
            return color;
        }
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = Ones(rows[v]).map(|u| color[u]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut distinct: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        if distinct.len() == classes {
            return color;
        }
        classes = distinct.len();
        color = sigs.iter().map(|s| distinct.binary_search(&s).unwrap() as u32).collect();
    }
}

fn twin_masks(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    (0..n)
        .map(|v| {
            let closed = rows[v] | 1 << v;
            (0..n).filter(|&u| rows[u] == rows[v] || (rows[u] | 1 << u) == closed).fold(0u64, |m, u| m | 1 << u)
        })
        .collect()
}

struct CanonSearch<'a> {
    rows: &'a [u64],
    cell_at: Vec<u64>,
    twins: Vec<u64>,
    order: Vec<usize>,
    used: u64,
    cur: u128,
    best: Option<(u128, Vec<usize>)>,
}

#[inline]
fn prefix(bits: u128, len: usize) -> u128 {
    if len == 0 {
        0
    } else {
        bits >> (128 - len)
    }
}

impl CanonSearch<'_> {
    fn dfs(&mut self, m: usize) {
        let n = self.rows.len();
        if m == n {
            if self.best.as_ref().is_none_or(|(b, _)| self.cur > *b) {
                self.best = Some((self.cur, self.order.clone()));
            }
            return;
        }
        let base = m * m.saturating_sub(1) / 2;
        let len = base + m;
        let clear: u128 = if m == 0 { 0 } else { (!0u128 >> base) & !(!0u128 >> len) };
        for v in Ones(self.cell_at[m] & !self.used) {
            // lowest unused member of the twin class only
            if (self.twins[v] & !self.used).trailing_zeros() as usize != v {
                continue;
            }
            let mut add = 0u128;
            for (i, &u) in self.order.iter().enumerate() {
                if self.rows[u] >> v & 1 == 1 {
                    add |= 1u128 << (127 - (base + i));
                }
            }
            let next = self.cur | add;
            if let Some((b, _)) = &self.best {
                if prefix(next, len) < prefix(*b, len) {
                    continue;
                }
            }
            self.cur = next;
            self.used |= 1 << v;
            self.order.push(v);
            self.dfs(m + 1);
            self.order.pop();
            self.used &= !(1 << v);
            self.cur &= !clear;
        }
    }
}

fn label_rows(rows: &[u64], color: &[u32]) -> Labelling {
    let n = rows.len();
    let classes = color.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut members = vec![0u64; classes];
    for (v, &c) in color.iter().enumerate() {
        members[c as usize] |= 1 << v;
    }
    let cell_at: Vec<u64> = members.iter().flat_map(|&m| std::iter::repeat_n(m, m.count_ones() as usize)).collect();
    let mut s = CanonSearch {
        rows,
        cell_at,
        twins: twin_masks(rows),
        order: Vec::with_capacity(n),
        used: 0,
        cur: 0,
        best: None,
    };
    s.dfs(0);
    let (bits, order) = s.best.expect("at least one labelling exists");
    Labelling { form: CanonicalForm { n: n as u8, bits }, order }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_CANON_N);
    if g.n() > cap {
        return Err(Error::CapExceeded { n: g.n(), cap });
    }
    Ok(())
}

pub fn canonical_labelling(g: &Graph, cap: usize) -> Result<Labelling> {
    check_cap(g, cap)?;
    let rows = g.rows64();
    Ok(label_rows(&rows, &refine(&rows)))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_capped(g, DEFAULT_CANON_CAP)
}

pub fn canonical_form_capped(g: &Graph, cap: usize) -> Result<CanonicalForm> {
    Ok(canonical_labelling(g, cap)?.form)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    is_isomorphic_capped(g, h, DEFAULT_CANON_CAP)
}

pub fn is_isomorphic_capped(g: &Graph, h: &Graph, cap: usize) -> Result<bool> {
    check_cap(g, cap)?;
    check_cap(h, cap)?;
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form_capped(g, cap)? == canonical_form_capped(h, cap)?)
}

/// All one-vertex extensions of `g` satisfying `predicate`, up to
/// isomorphism, as canonically relabelled graphs sorted by canonical form.
pub fn augmentations(g: &Graph, predicate: impl Fn(&Graph) -> bool, cap: usize) -> Result<Vec<Graph>> {
    let n = g.n();
    check_cap(&Graph::empty(n + 1), cap)?;
    let mut seen = BTreeMap::new();
    for mask in 0u64..1 << n {
        let child = g.with_vertex(&VertexSet::from_words(&[mask]))?;
        if predicate(&child) {
            let form = canonical_form_capped(&child, cap)?;
            seen.entry(form).or_insert_with(|| form.to_graph());
        }
    }
    Ok(seen.into_values().collect())
}

/// Children of a canonical parent in the generation tree: one-vertex
/// extensions with at least `min_edges` edges that pass `accept` and whose
/// canonical deletion vertex lies in the orbit of the added vertex.
/// Every isomorphism class of `(n+1)`-vertex graphs is produced by exactly
/// one parent class, so results of distinct parents never collide.
pub fn canonical_children(
    parent: &Graph,
    min_edges: usize,
    cap: usize,
    mut accept: impl FnMut(&Graph) -> bool,
) -> Result<Vec<CanonicalForm>> {
    let n = parent.n();
    check_cap(&Graph::empty(n + 1), cap)?;
    let parent_form = canonical_form_capped(parent, cap)?;
    let prow = parent.rows64();
    let base_edges = parent.edge_count();
    let mut out = BTreeMap::new();
    let mut rows = prow.clone();
    rows.push(0);
    for mask in 0u64..1 << n {
        if base_edges + (mask.count_ones() as usize) < min_edges {
            continue;
        }
        for (v, row) in rows.iter_mut().enumerate().take(n) {
            *row = prow[v] | ((mask >> v & 1) << n);
        }
        rows[n] = mask;
        let color = refine(&rows);
        let last = *color.iter().max().expect("non-empty");
        if color[n] != last {
            continue;
        }
        let child = Graph::from_rows64(&rows);
        if !accept(&child) {
            continue;
        }
        let lab = label_rows(&rows, &color);
        let del = lab.order[n];
        if del != n {
            let mut reduced = child.clone().remove_vertex(del)?.rows64();
            reduced.truncate(n);
            let red_color = refine(&reduced);
            if label_rows(&reduced, &red_color).form != parent_form {
                continue;
            }
        }
        out.insert(lab.form, ());
    }
    Ok(out.into_keys().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{clique_path, friendship, turan};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn from_mask(n: usize, mask: u64) -> Graph {
        let mut g = Graph::empty(n);
        let mut t = 0;
        for v in 1..n {
            for u in 0..v {
                if mask >> t & 1 == 1 {
                    g.set(u, v);
                }
                t += 1;
            }
        }
        g
    }

    fn shuffled(g: &Graph, rng: &mut impl Rng) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        g.relabel(&perm).unwrap()
    }

    // Unlabelled graph counts by brute force over every labelled graph,
    // with isomorphism decided by trying all permutations.
    fn brute_force_classes(n: usize) -> usize {
        let pairs = n * n.saturating_sub(1) / 2;
        let perms = permutations(n);
        let mut reps: BTreeSet<u64> = BTreeSet::new();
        for mask in 0u64..1 << pairs {
            let g = from_mask(n, mask);
            let min = perms.iter().map(|p| to_mask(&g.relabel(p).unwrap())).min().unwrap();
            reps.insert(min);
        }
        reps.len()
    }

    fn to_mask(g: &Graph) -> u64 {
        let mut m = 0;
        let mut t = 0;
        for v in 1..g.n() {
            for u in 0..v {
                if g.has_edge(u, v) {
                    m |= 1 << t;
                }
                t += 1;
            }
        }
        m
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn relabelling_invariance_examples() {
        let c4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c4b = Graph::build(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&c4).unwrap(), canonical_form(&c4b).unwrap());
        let k3k1 = Graph::complete(3).disjoint_union(&Graph::empty(1));
        let p4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_ne!(canonical_form(&k3k1).unwrap(), canonical_form(&p4).unwrap());
    }

    #[test]
    fn five_vertex_count_frozen_from_brute_force() {
        // brute_force_classes(5) == 34, computed by the permutation oracle below
        assert_eq!(brute_force_classes(4), 11);
        assert_eq!(brute_force_classes(5), 34);
        let forms: BTreeSet<_> = (0u64..1 << 10).map(|m| canonical_form(&from_mask(5, m)).unwrap()).collect();
        assert_eq!(forms.len(), 34);
    }

    #[test]
    fn exhaustive_exactness_up_to_six() {
        let known = [1usize, 1, 2, 4, 11, 34, 156];
        for (n, &count) in known.iter().enumerate() {
            let pairs = n * n.saturating_sub(1) / 2;
            let forms: BTreeSet<_> = (0u64..1 << pairs).map(|m| canonical_form(&from_mask(n, m)).unwrap()).collect();
            assert_eq!(forms.len(), count, "n = {n}");
        }
    }

    #[test]
    fn form_round_trips_through_graph() {
        let g = clique_path(2, 4).unwrap();
        let form = canonical_form(&g).unwrap();
        let h = form.to_graph();
        assert_eq!(canonical_form(&h).unwrap(), form);
        assert_eq!(form.edge_count(), g.edge_count());
        let lab = canonical_labelling(&g, 10).unwrap();
        assert_eq!(g.relabel(&lab.order).unwrap(), h);
    }

    #[test]
    fn isomorphism_examples() {
        assert!(is_isomorphic(&clique_path(2, 3).unwrap(), &friendship(2, 3).unwrap()).unwrap());
        // explicit map: hinges 0,1,2 and fills 3,4 -> center at pattern hinge p_2
        let bowtie = clique_path(2, 3).unwrap();
        let f = friendship(2, 3).unwrap();
        assert_eq!(bowtie.relabel(&[1, 0, 3, 2, 4]).unwrap(), f);
        let c6 = Graph::build(6, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>()).unwrap();
        assert!(!is_isomorphic(&turan(6, 3).unwrap(), &c6).unwrap());
        assert!(!is_isomorphic(&clique_path(3, 3).unwrap(), &friendship(3, 3).unwrap()).unwrap());
    }

    #[test]
    fn random_relabellings_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(1..=8);
            let g = from_mask(n, rng.gen::<u64>() & ((1u64 << (n * (n - 1) / 2)) - 1));
            assert!(is_isomorphic(&g, &shuffled(&g, &mut rng)).unwrap());
        }
        for _ in 0..30 {
            let g = from_mask(10, rng.gen::<u64>() & ((1u64 << 45) - 1));
            assert_eq!(canonical_form(&g).unwrap(), canonical_form(&shuffled(&g, &mut rng)).unwrap());
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(canonical_form(&Graph::empty(11)), Err(Error::CapExceeded { n: 11, cap: 10 }));
        assert!(canonical_form_capped(&Graph::empty(11), 12).is_ok());
        assert!(canonical_form_capped(&Graph::empty(17), 40).is_err());
    }

    #[test]
    fn symmetric_graphs_are_fast_enough() {
        for g in [Graph::empty(16), Graph::complete(16), turan(16, 4).unwrap(), clique_path(5, 4).unwrap()] {
            let cap = g.n();
            let lab = canonical_labelling(&g, cap).unwrap();
            assert_eq!(lab.form.edge_count(), g.edge_count());
        }
    }

    #[test]
    fn augmentation_examples() {
        let kids = augmentations(&Graph::empty(1), |_| true, 10).unwrap();
        assert_eq!(kids.len(), 2);
        assert!(kids.contains(&Graph::empty(2)) && kids.contains(&Graph::complete(2)));
    }

    // Level-by-level generation through the canonical-deletion tree, checked
    // against the brute-force class counts.
    fn generate(max_n: usize, pred: impl Fn(&Graph) -> bool + Copy) -> Vec<usize> {
        let mut level = vec![Graph::empty(1)];
        let mut counts = vec![1];
        for _ in 1..max_n {
            let mut next = Vec::new();
            for parent in &level {
                for form in canonical_children(parent, 0, 10, pred).unwrap() {
                    next.push(form);
                }
            }
            let unique: BTreeSet<_> = next.iter().copied().collect();
            assert_eq!(unique.len(), next.len(), "a class was produced by two parents");
            counts.push(next.len());
            level = next.into_iter().map(|f| f.to_graph()).collect();
        }
        counts
    }

    #[test]
    fn generation_counts_all_graphs() {
        assert_eq!(generate(7, |_| true), vec![1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn generation_counts_triangle_free() {
        let tri_free = |g: &Graph| crate::containment::find_clique(g, 3, &g.vertices(), &VertexSet::new()).is_none();
        // brute-force filter of the 34 five-vertex classes
        let forms: BTreeSet<_> = (0u64..1 << 10)
            .map(|m| from_mask(5, m))
            .filter(|g| tri_free(g))
            .map(|g| canonical_form(&g).unwrap())
            .collect();
        assert_eq!(forms.len(), 14);
        assert_eq!(generate(6, tri_free), vec![1, 2, 3, 7, 14, 38]);
    }

    #[test]
    fn augmentations_match_filter_of_all_extensions() {
        let g = Graph::build(4, &[(0, 1), (2, 3)]).unwrap();
        let tri_free = |h: &Graph| crate::containment::find_clique(h, 3, &h.vertices(), &VertexSet::new()).is_none();
        let kids = augmentations(&g, tri_free, 10).unwrap();
        let brute: BTreeSet<_> = (0u64..16)
            .map(|m| g.with_vertex(&VertexSet::from_words(&[m])).unwrap())
            .filter(|h| tri_free(h))
            .map(|h| canonical_form(&h).unwrap())
            .collect();
        assert_eq!(kids.len(), brute.len());
        for k in &kids {
            assert!(tri_free(k));
        }
    }
}
