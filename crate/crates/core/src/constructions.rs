//! Graph families: Turán graphs, clique-paths, friendship graphs and the
//! extremal candidates `K_f ∨ T_{n-f,r-1}` (plus an edge for even `k`).

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// Which Turán part receives the extra edge of an even-`k` candidate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremalVariant {
    #[default]
    LargestPart,
    SmallestPart,
}

impl ExtremalVariant {
    pub const ALL: [ExtremalVariant; 2] = [ExtremalVariant::LargestPart, ExtremalVariant::SmallestPart];
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Part sizes of `T_{n,r}`, larger parts first.
pub fn turan_part_sizes(n: usize, r: usize) -> Result<Vec<usize>> {
    if r == 0 {
        return if n == 0 {
            Ok(Vec::new())
        } else {
            Err(Error::InvalidParameter("Turán graph needs r >= 1 parts".into()))
        };
    }
    let (q, rem) = (n / r, n % r);
    Ok((0..r).map(|i| q + usize::from(i < rem)).collect())
}

/// Vertex ranges of the Turán parts, in index order.
pub fn turan_parts(n: usize, r: usize) -> Result<Vec<std::ops::Range<usize>>> {
    let mut start = 0;
    Ok(turan_part_sizes(n, r)?
        .into_iter()
        .map(|s| {
            let range = start..start + s;
            start += s;
            range
        })
        .collect())
}

pub fn turan(n: usize, r: usize) -> Result<Graph> {
    let parts = turan_parts(n, r)?;
    let mut part_of = vec![0; n];
    for (i, p) in parts.iter().enumerate() {
        for v in p.clone() {
            part_of[v] = i;
        }
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.set(u, v);
            }
        }
    }
    Ok(g)
}

/// `t_{n,r}`
pub fn turan_count(n: usize, r: usize) -> Result<usize> {
    let sizes = turan_part_sizes(n, r)?;
    Ok(binom2(n) - sizes.into_iter().map(binom2).sum::<usize>())
}

fn check_clique_params(k: usize, r: usize, min_r: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidParameter(format!("k must be >= 1, got {k}")));
    }
    if r < min_r {
        return Err(Error::InvalidParameter(format!("r must be >= {min_r}, got {r}")));
    }
    Ok(())
}

/// Pattern-vertex index of hinge `p_i`, `1 <= i <= k+1`.
pub fn hinge_index(i: usize) -> usize {
    i - 1
}

/// Pattern-vertex index of `c_{i,j}` (`1 <= i <= k`, `1 <= j <= r-2`).
pub fn fill_index(k: usize, r: usize, i: usize, j: usize) -> usize {
    k + 1 + (i - 1) * (r - 2) + (j - 1)
}

/// `P_{k,r}`: hinges `p_1..p_{k+1}` are vertices `0..=k`, followed by the
/// blocks `c_{i,1..r-2}` in order of `i`.
pub fn clique_path(k: usize, r: usize) -> Result<Graph> {
    check_clique_params(k, r, 3)?;
    let mut g = Graph::empty(k * (r - 1) + 1);
    for i in 1..=k {
        let mut clique = vec![hinge_index(i), hinge_index(i + 1)];
        clique.extend((1..=r - 2).map(|j| fill_index(k, r, i, j)));
        for (a, &u) in clique.iter().enumerate() {
            for &v in &clique[a + 1..] {
                g.set(u, v);
            }
        }
    }
    Ok(g)
}

/// `F_{k,r}`: center 0, then the `k` blocks of `r-1` leaves.
pub fn friendship(k: usize, r: usize) -> Result<Graph> {
    check_clique_params(k, r, 2)?;
    let mut g = Graph::empty((r - 1) * k + 1);
    for i in 0..k {
        let block: Vec<usize> = (0..r - 1).map(|j| 1 + i * (r - 1) + j).collect();
        for (a, &u) in block.iter().enumerate() {
            g.set(0, u);
            for &v in &block[a + 1..] {
                g.set(u, v);
            }
        }
    }
    Ok(g)
}

/// Number of universal vertices `f = ⌊(k-1)/2⌋` of the extremal candidate.
pub fn universal_count(k: usize) -> usize {
    k.saturating_sub(1) / 2
}

/// Vertex layout of an extremal candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateLayout {
    /// The `f` universal vertices `0..f`.
    pub universal: std::ops::Range<usize>,
    /// Turán parts of `T_{n-f,r-1}`, shifted by `f`.
    pub parts: Vec<std::ops::Range<usize>>,
    /// The extra edge for even `k`.
    pub extra_edge: Option<(usize, usize)>,
}

pub fn candidate_layout(n: usize, k: usize, r: usize, variant: ExtremalVariant) -> Result<CandidateLayout> {
    check_clique_params(k, r, 3)?;
    let f = universal_count(k);
    if n < f + r - 1 {
        return Err(Error::TooFewVertices(format!(
            "G_{{n,{k},{r}}} needs n >= f + r - 1 = {}, got n = {n}",
            f + r - 1
        )));
    }
    let parts: Vec<_> = turan_parts(n - f, r - 1)?.into_iter().map(|p| p.start + f..p.end + f).collect();
    let extra_edge = if k.is_multiple_of(2) {
        let part = match variant {
            ExtremalVariant::LargestPart => parts.first(),
            ExtremalVariant::SmallestPart => parts.last(),
        }
        .expect("r >= 3 gives at least two parts");
        if part.len() < 2 {
            return Err(Error::TooFewVertices(format!(
                "even k needs a Turán part of size >= 2 for the extra edge (n = {n}, k = {k}, r = {r}, {variant:?})"
            )));
        }
        Some((part.start, part.start + 1))
    } else {
        None
    };
    Ok(CandidateLayout { universal: 0..f, parts, extra_edge })
}

/// `G_{n,k,r} = K_f ∨ T_{n-f,r-1}`, plus one edge inside a part when `k` is even.
pub fn extremal_candidate(n: usize, k: usize, r: usize, variant: ExtremalVariant) -> Result<Graph> {
    let layout = candidate_layout(n, k, r, variant)?;
    let f = layout.universal.len();
    let mut g = Graph::complete(f).join(&turan(n - f, r - 1)?);
    if let Some((a, b)) = layout.extra_edge {
        g.set(a, b);
    }
    Ok(g)
}

/// Closed form `C(f,2) + f(n-f) + t_{n-f,r-1} + [k even]`, guarded against the
/// edge count of the built graph in debug builds.
pub fn g_count(n: usize, k: usize, r: usize) -> Result<usize> {
    candidate_layout(n, k, r, ExtremalVariant::LargestPart)?;
    let f = universal_count(k);
    let count = binom2(f) + f * (n - f) + turan_count(n - f, r - 1)? + usize::from(k.is_multiple_of(2));
    debug_assert_eq!(count, extremal_candidate(n, k, r, ExtremalVariant::LargestPart)?.edge_count());
    Ok(count)
}

/// Minimum degree of the default-variant `G_{n,k,r}`, read off the construction.
pub fn delta_extremal(n: usize, k: usize, r: usize) -> Result<usize> {
    Ok(extremal_candidate(n, k, r, ExtremalVariant::LargestPart)?.min_degree())
}

/// `t_{n,r-1} + k² - k` for odd `k`, `t_{n,r-1} + k² - 3k/2` for even `k`.
pub fn theorem1_bound(n: usize, k: usize, r: usize) -> Result<usize> {
    check_clique_params(k, r, 3)?;
    let extra = if k % 2 == 1 { k * k - k } else { k * k - 3 * k / 2 };
    Ok(turan_count(n, r - 1)? + extra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_examples() {
        assert_eq!(turan_count(6, 3).unwrap(), 12);
        assert_eq!(turan_count(8, 3).unwrap(), 21);
        assert_eq!(turan_part_sizes(8, 3).unwrap(), vec![3, 3, 2]);
        for n in 0..8 {
            assert_eq!(turan(n, 1).unwrap(), Graph::empty(n));
        }
        assert!(turan(3, 0).is_err());
        assert_eq!(turan(0, 0).unwrap().n(), 0);
        for n in 0..20 {
            for r in 1..6 {
                assert_eq!(turan(n, r).unwrap().edge_count(), turan_count(n, r).unwrap());
                let sizes = turan_part_sizes(n, r).unwrap();
                assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
            }
        }
    }

    #[test]
    fn clique_path_shape() {
        for r in 3..7 {
            assert_eq!(clique_path(1, r).unwrap(), Graph::complete(r));
        }
        let p = clique_path(3, 4).unwrap();
        assert_eq!((p.n(), p.edge_count()), (10, 18));
        // hinges p_2, p_3 sit in two cliques
        assert_eq!(p.degrees()[..4], [3, 6, 6, 3]);
        assert!(clique_path(0, 3).is_err());
        assert!(clique_path(2, 2).is_err());
        for k in 1..5 {
            for r in 3..6 {
                assert_eq!(clique_path(k, r).unwrap().edge_count(), k * r * (r - 1) / 2);
            }
        }
    }

    #[test]
    fn friendship_shape() {
        for r in 2..6 {
            assert_eq!(friendship(1, r).unwrap(), Graph::complete(r));
        }
        let f = friendship(2, 3).unwrap();
        assert_eq!((f.n(), f.edge_count()), (5, 6));
        let f = friendship(3, 3).unwrap();
        assert_eq!((f.n(), f.edge_count(), f.degree(0)), (7, 9, 6));
        assert!(friendship(0, 3).is_err());
        assert!(friendship(2, 1).is_err());
    }

    #[test]
    fn g_count_examples() {
        for n in 2..12 {
            assert_eq!(g_count(n, 1, 3).unwrap(), turan_count(n, 2).unwrap());
        }
        assert_eq!(g_count(6, 1, 3).unwrap(), 9);
        assert_eq!(g_count(10, 6, 4).unwrap(), 39);
        assert_eq!(g_count(5, 2, 3).unwrap(), 7);
    }

    #[test]
    fn g_count_matches_construction_on_grid() {
        for k in 1..=6 {
            for r in 3..=5 {
                for n in 0..=40 {
                    for variant in ExtremalVariant::ALL {
                        match extremal_candidate(n, k, r, variant) {
                            Ok(g) => {
                                assert!(g.is_well_formed());
                                assert_eq!(g.edge_count(), g_count(n, k, r).unwrap(), "n={n} k={k} r={r}");
                            }
                            Err(e) => assert!(matches!(e, Error::TooFewVertices(_))),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn g_count_strictly_increases_in_k() {
        for r in 3..=5 {
            for n in 12..=40 {
                let counts: Vec<_> = (1..=6).map(|k| g_count(n, k, r).unwrap()).collect();
                assert!(counts.windows(2).all(|w| w[0] < w[1]), "n={n} r={r}: {counts:?}");
            }
        }
    }

    #[test]
    fn precondition_rejects_small_n() {
        // f = 2, r - 1 = 3
        assert!(extremal_candidate(4, 5, 4, ExtremalVariant::LargestPart).is_err());
        assert!(extremal_candidate(5, 5, 4, ExtremalVariant::LargestPart).is_ok());
        // even k: the largest part needs two vertices
        assert!(extremal_candidate(2, 2, 3, ExtremalVariant::LargestPart).is_err());
        assert!(extremal_candidate(3, 2, 3, ExtremalVariant::LargestPart).is_ok());
        assert!(extremal_candidate(3, 2, 3, ExtremalVariant::SmallestPart).is_err());
    }

    #[test]
    fn extremal_candidate_structure() {
        let layout = candidate_layout(10, 6, 4, ExtremalVariant::LargestPart).unwrap();
        assert_eq!(layout.universal, 0..2);
        assert_eq!(layout.parts, vec![2..5, 5..8, 8..10]);
        assert_eq!(layout.extra_edge, Some((2, 3)));
        let g = extremal_candidate(10, 6, 4, ExtremalVariant::LargestPart).unwrap();
        assert_eq!(g.degree(0), 9);
        assert_eq!(g.degree(1), 9);
        let small = candidate_layout(10, 6, 4, ExtremalVariant::SmallestPart).unwrap();
        assert_eq!(small.extra_edge, Some((8, 9)));
    }

    #[test]
    fn delta_extremal_examples() {
        assert_eq!(delta_extremal(10, 6, 4).unwrap(), 7);
        assert_eq!(delta_extremal(6, 1, 3).unwrap(), 3);
    }

    #[test]
    fn theorem1_examples() {
        for n in 3..10 {
            for r in 3..6 {
                assert_eq!(theorem1_bound(n, 1, r).unwrap(), turan_count(n, r - 1).unwrap());
            }
        }
        assert_eq!(theorem1_bound(5, 2, 3).unwrap(), 7);
        assert_eq!(theorem1_bound(10, 3, 3).unwrap(), 31);
        assert!(theorem1_bound(5, 2, 2).is_err());
    }
}
