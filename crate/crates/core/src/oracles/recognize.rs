use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::PermutationRep;
use crate::graph::{Graph, Vertex};
use crate::orientation::{acyclic_wrt_pairs, Orientation, PairSet};

pub const MAX_VERTICES: usize = 24;
/// Limit for the search over all pairs of rail orders.
pub const MAX_EXHAUSTIVE: usize = 6;

/// Edge directions during the search: `0` unset, `1` low → high, `-1` high → low.
struct Search<'a> {
    g: &'a Graph,
    index: Vec<Vec<Option<usize>>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Search<'_> {
    fn arc(&self, dir: &[i8], x: Vertex, y: Vertex) -> Option<bool> {
        let e = self.index[x][y]?;
        match dir[e] {
            0 => None,
            d => Some((d == 1) == (x < y)),
        }
    }

    /// Sets `x → y` and closes under forcing and transitivity.
    fn assign(&self, dir: &mut [i8], x: Vertex, y: Vertex) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            let e = self.index[x][y].expect("arc on an edge");
            let want = if x < y { 1 } else { -1 };
            if dir[e] == want {
                continue;
            }
            if dir[e] == -want {
                return false;
            }
            dir[e] = want;
            // x → y forces x → c for c ∈ N(x) ∖ N[y], and c → y for c ∈ N(y) ∖ N[x]
            for &c in self.g.adjacent(x) {
                if c != y && !self.g.has_edge(c, y) {
                    queue.push((x, c));
                }
            }
            for &c in self.g.adjacent(y) {
                if c != x && !self.g.has_edge(c, x) {
                    queue.push((c, y));
                }
            }
            // transitivity with arcs already present
            for &z in self.g.adjacent(y) {
                if z != x && self.arc(dir, y, z) == Some(true) {
                    if !self.g.has_edge(x, z) {
                        return false;
                    }
                    queue.push((x, z));
                }
            }
            for &w in self.g.adjacent(x) {
                if w != y && self.arc(dir, w, x) == Some(true) {
                    if !self.g.has_edge(w, y) {
                        return false;
                    }
                    queue.push((w, y));
                }
            }
        }
        true
    }

    fn solve(&self, dir: Vec<i8>) -> Option<Vec<i8>> {
        let Some(e) = dir.iter().position(|&d| d == 0) else {
            return Some(dir);
        };
        let (x, y) = self.edges[e];
        for (a, b) in [(x, y), (y, x)] {
            let mut next = dir.clone();
            if self.assign(&mut next, a, b) {
                if let Some(done) = self.solve(next) {
                    return Some(done);
                }
            }
        }
        None
    }
}

/// A transitive orientation of `g`, found by backtracking over edge
/// directions with forcing propagation, or `None`.
pub fn is_comparability(g: &Graph) -> Result<Option<Orientation>> {
    if g.n() > MAX_VERTICES {
        return Err(Error::Guard { what: "vertices", value: g.n(), limit: MAX_VERTICES });
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut index = vec![vec![None; g.n()]; g.n()];
    for (i, &(x, y)) in edges.iter().enumerate() {
        index[x][y] = Some(i);
        index[y][x] = Some(i);
    }
    let search = Search { g, index, edges };
    let Some(dir) = search.solve(vec![0; search.edges.len()]) else {
        return Ok(None);
    };
    let arcs: BTreeSet<(Vertex, Vertex)> =
        search.edges.iter().zip(&dir).map(|(&(x, y), &d)| if d == 1 { (x, y) } else { (y, x) }).collect();
    let o = Orientation { n: g.n(), arcs };
    debug_assert!(o.is_transitive_orientation_of(g));
    Ok(o.is_transitive_orientation_of(g).then_some(o))
}

/// Comparability and co-comparability.
pub fn is_permutation_graph(g: &Graph) -> Result<bool> {
    Ok(is_comparability(g)?.is_some() && is_comparability(&g.complement())?.is_some())
}

/// All orders of `0..n`, lexicographic.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("a larger suffix element exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Some permutation rep of `g` that is acyclic w.r.t. `pairs`, by trying
/// every pair of rail orders. Only the orders matter: crossing lines are
/// always oriented from the one that is left on the bottom rail.
pub fn find_acyclic_permutation_rep(g: &Graph, pairs: &PairSet) -> Result<Option<PermutationRep>> {
    let n = g.n();
    if n > MAX_EXHAUSTIVE {
        return Err(Error::Guard { what: "vertices", value: n, limit: MAX_EXHAUSTIVE });
    }
    let orders = permutations(n);
    for top in &orders {
        for bottom in &orders {
            let realizes = (0..n)
                .all(|x| (x + 1..n).all(|y| ((top[x] < top[y]) != (bottom[x] < bottom[y])) == g.has_edge(x, y)));
            if !realizes {
                continue;
            }
            let ints: Vec<(i64, i64)> = (0..n).map(|v| (top[v] as i64, bottom[v] as i64)).collect();
            let rep = PermutationRep::from_ints(&ints)?;
            if acyclic_wrt_pairs(&rep, pairs)? {
                return Ok(Some(rep));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive over all 2^|E| orientations.
    fn brute_comparability(g: &Graph) -> bool {
        let edges: Vec<_> = g.edges().collect();
        (0..1u64 << edges.len()).any(|mask| {
            let arcs = edges
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| if mask >> i & 1 == 1 { (x, y) } else { (y, x) })
                .collect();
            Orientation { n: g.n(), arcs }.is_transitive_orientation_of(g)
        })
    }

    #[test]
    fn complete_and_cycles() {
        let k = Graph::complete(5);
        assert!(is_comparability(&k).unwrap().unwrap().is_transitive_orientation_of(&k));
        let c5 = Graph::cycle(5);
        assert!(!brute_comparability(&c5));
        assert!(is_comparability(&c5).unwrap().is_none());
        assert!(!is_permutation_graph(&c5).unwrap());
        assert!(is_comparability(&Graph::cycle(6)).unwrap().is_some());
        assert!(is_permutation_graph(&Graph::empty(4)).unwrap());
        assert!(matches!(is_comparability(&Graph::empty(25)), Err(Error::Guard { .. })));
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        // every graph on five vertices
        let pairs: Vec<(Vertex, Vertex)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        for mask in 0..1u32 << pairs.len() {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            let g = Graph::from_edges(5, edges).unwrap();
            assert_eq!(is_comparability(&g).unwrap().is_some(), brute_comparability(&g), "{:?}", g.edges().collect::<Vec<_>>());
        }
    }

    #[test]
    fn permutation_orders() {
        assert_eq!(permutations(3), vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]);
        assert_eq!(permutations(5).len(), 120);
    }

    #[test]
    fn acyclic_rep_search() {
        // two pairs, every line crossing both lines of the other pair
        let g = Graph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let pairs = PairSet::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let rep = find_acyclic_permutation_rep(&g, &pairs).unwrap().unwrap();
        assert_eq!(rep.verify(&g).unwrap(), None);
        assert!(acyclic_wrt_pairs(&rep, &pairs).unwrap());
        // a pair whose lines must cross gives a loop in every rep
        let k2 = Graph::complete(2);
        let one = PairSet::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(find_acyclic_permutation_rep(&k2, &one).unwrap(), None);
        let eight = PairSet::new(8, (0..4).map(|i| (2 * i, 2 * i + 1)).collect()).unwrap();
        assert!(matches!(find_acyclic_permutation_rep(&Graph::empty(8), &eight), Err(Error::Guard { .. })));
    }

    #[test]
    fn permutation_reps_are_permutation_graphs() {
        let r = PermutationRep::from_ints(&[(0, 3), (1, 0), (2, 4), (3, 1), (4, 2), (5, 6), (6, 5)]).unwrap();
        assert!(is_permutation_graph(&r.graph()).unwrap());
    }
}
