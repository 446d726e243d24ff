//! Small hand-checked instances.

use crate::exec::Execution;
use crate::geometry::TrapezoidRep;
use crate::graph::{Graph, Vertex};
use crate::reduction::MonotoneCnf;

/// Vertex ids of the running eight-vertex example.
pub struct Running;

impl Running {
    pub const U: Vertex = 0;
    pub const U1: Vertex = 1;
    pub const U2: Vertex = 2;
    pub const U3: Vertex = 3;
    pub const V1: Vertex = 4;
    pub const V2: Vertex = 5;
    pub const V3: Vertex = 6;
    pub const V4: Vertex = 7;

    pub fn labels() -> Vec<String> {
        ["u", "u1", "u2", "u3", "v1", "v2", "v3", "v4"].map(String::from).to_vec()
    }
}

/// Edges `u–u1, u–u2, u–u3, u1–v1, u1–v2, u3–v2, u2–v3, u3–v3, u3–v4`;
/// the `u_i` are pairwise non-adjacent.
pub fn running_example() -> Graph {
    use Running as F;
    Graph::from_edges(
        8,
        [
            (F::U, F::U1),
            (F::U, F::U2),
            (F::U, F::U3),
            (F::U1, F::V1),
            (F::U1, F::V2),
            (F::U3, F::V2),
            (F::U2, F::V3),
            (F::U3, F::V3),
            (F::U3, F::V4),
        ],
    )
    .expect("fixture edges are valid")
}

/// Interval-shaped trapezoids (`a = c`, `b = d`) with the ids of [`Running`]:
/// the master `V2` lies left of `T_u` while `V4 ∈ D_u(V2)` lies right of it.
/// Its graph is the running example plus the edges `u1–u3` and `u2–u3`.
pub fn closure_counterexample_rep() -> TrapezoidRep {
    let intervals: [(i64, i64); 8] = [(20, 40), (3, 22), (38, 51), (9, 60), (2, 4), (8, 10), (50, 52), (56, 58)];
    let traps: Vec<_> = intervals.iter().map(|&(l, r)| (l, r, l, r)).collect();
    TrapezoidRep::from_ints(&traps).expect("fixture endpoints are distinct")
}

/// The lexicographically first monotone 3-CNF without an NAE-satisfying
/// assignment: the seven lines of the Fano plane.
pub fn unsat_formula() -> MonotoneCnf {
    MonotoneCnf::new(7, UNSAT_CLAUSES.to_vec()).expect("valid formula")
}

const UNSAT_CLAUSES: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];

/// Searches formulas by increasing `k`, then `n ≤ max_n`, with clause lists
/// in lexicographic order (the first clause can be taken as `(1,2,3)` up to
/// renaming), for the first one that uses every variable and has no
/// NAE-satisfying assignment.
pub fn discover_unsat_formula(max_n: usize, max_k: usize) -> Option<MonotoneCnf> {
    assert!(max_n <= 7, "assignment masks are 128 bits wide");
    for k in 1..=max_k {
        for n in 3..=max_n {
            if 3 * k < n {
                continue;
            }
            let triples: Vec<[usize; 3]> = (1..=n)
                .flat_map(|a| (a + 1..=n).flat_map(move |b| (b + 1..=n).map(move |c| [a, b, c])))
                .collect();
            // bit `a` of a mask is set iff assignment `a` NAE-satisfies the clause
            let masks: Vec<u128> = triples
                .iter()
                .map(|t| {
                    (0..1u128 << n)
                        .filter(|&a| {
                            let ones = t.iter().filter(|&&p| a >> (n - p) & 1 == 1).count();
                            ones == 1 || ones == 2
                        })
                        .fold(0u128, |m, a| m | 1 << a)
                })
                .collect();
            let mut chosen = vec![0usize];
            if let Some(found) = dfs(&triples, &masks, n, k, &mut chosen, masks[0]) {
                return Some(MonotoneCnf::new(n, found).expect("search keeps every variable"));
            }
        }
    }
    None
}

fn dfs(triples: &[[usize; 3]], masks: &[u128], n: usize, k: usize, chosen: &mut Vec<usize>, acc: u128) -> Option<Vec<[usize; 3]>> {
    if chosen.len() == k {
        let mut used = vec![false; n + 1];
        for &i in chosen.iter() {
            for &p in &triples[i] {
                used[p] = true;
            }
        }
        return (acc == 0 && used[1..].iter().all(|&u| u)).then(|| chosen.iter().map(|&i| triples[i]).collect());
    }
    let start = chosen.last().map_or(0, |&i| i + 1);
    for i in start..triples.len() {
        chosen.push(i);
        let found = dfs(triples, masks, n, k, chosen, acc & masks[i]);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Exhaustive certificate that no assignment NAE-satisfies `f`.
pub fn certify_unsat(f: &MonotoneCnf) -> bool {
    crate::oracles::nae_sat_bruteforce(f, Execution::Sequential).is_ok_and(|a| a.is_none())
}
