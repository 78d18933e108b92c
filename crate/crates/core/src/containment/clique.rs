use super::witness::Witness;
use crate::bits::{Row, VertexSet};
use crate::graph::Graph;
use crate::pattern::PatternSpec;

/// Lexicographically least `r`-clique among vertices `cand`, extending `chosen`.
pub(crate) fn least_clique<R: Row>(adj: &[R], cand: &R, r: usize, chosen: &mut Vec<usize>) -> bool {
    if r == 0 {
        return true;
    }
    let mut rest = cand.clone();
    while rest.count() >= r {
        let v = rest.lowest().expect("non-empty");
        rest.remove(v);
        chosen.push(v);
        if least_clique(adj, &rest.and(&adj[v]), r - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Sorted vertices of the lexicographically least `r`-clique inside `cand`.
pub(crate) fn clique_in(g: &Graph, cand: &VertexSet, r: usize) -> Option<Vec<usize>> {
    let mut chosen = Vec::with_capacity(r);
    let found = if g.n() <= 64 {
        least_clique(&g.rows64(), &u64::from_set(cand), r, &mut chosen)
    } else {
        least_clique(&g.rows::<VertexSet>(), cand, r, &mut chosen)
    };
    found.then_some(chosen)
}

/// Lexicographically least `r`-clique inside `within ∖ avoiding`.
pub fn find_clique(g: &Graph, r: usize, within: &VertexSet, avoiding: &VertexSet) -> Option<Witness> {
    let cand = within.intersection(&g.vertices()).difference(avoiding);
    clique_in(g, &cand, r).map(|map| Witness::new(PatternSpec::Clique { r }, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::turan;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &edges).unwrap()
    }

    #[test]
    fn examples() {
        let none = VertexSet::new();
        let k5 = Graph::complete(5);
        let w = find_clique(&k5, 3, &k5.vertices(), &none).unwrap();
        assert_eq!(w.map, vec![0, 1, 2]);
        assert!(w.is_valid(&k5));
        let c5 = cycle(5);
        assert!(find_clique(&c5, 3, &c5.vertices(), &none).is_none());
        let t = turan(6, 2).unwrap();
        assert!(find_clique(&t, 3, &t.vertices(), &none).is_none());
    }

    #[test]
    fn restriction_sets() {
        let k5 = Graph::complete(5);
        let avoid: VertexSet = [0, 2].into_iter().collect();
        assert_eq!(find_clique(&k5, 3, &k5.vertices(), &avoid).unwrap().map, vec![1, 3, 4]);
        let within: VertexSet = [0, 1].into_iter().collect();
        assert!(find_clique(&k5, 3, &within, &VertexSet::new()).is_none());
        assert_eq!(find_clique(&k5, 0, &within, &VertexSet::new()).unwrap().map, Vec::<usize>::new());
    }

    #[test]
    fn wide_rows_agree() {
        // triangle placed beyond the first word
        let extra = Graph::complete(3);
        let g = cycle(70).disjoint_union(&extra);
        let w = find_clique(&g, 3, &g.vertices(), &VertexSet::new()).unwrap();
        assert_eq!(w.map, vec![70, 71, 72]);
        assert!(w.is_valid(&g));
    }
}
