//! Vertex splitting `G#(u)` and Algorithm Split-U.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::structure::{n_partition_with, ComponentFamily, NPartition};

/// Result of one split: `u` is gone, ids above `u` moved down by one, and
/// the derivatives `u¹`, `u²` are the last two ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSplit {
    pub graph: Graph,
    pub derivatives: (Vertex, Vertex),
    /// Partition of `N(u)`, in the ids of the input graph.
    pub partition: NPartition,
    /// `δ_u` and `δ*_u`, in the ids of the input graph.
    pub delta: VertexSet,
    pub delta_star: VertexSet,
}

pub fn vertex_split(g: &Graph, u: Vertex) -> Result<VertexSplit> {
    let family = ComponentFamily::new(g, u)?;
    let deltas = family.select_deltas()?;
    let (Some(i), Some(j)) = (deltas.delta, deltas.delta_star) else {
        return Err(Error::EmptyDeltaStar(u));
    };
    let partition = n_partition_with(g, &family, i, j)?;
    let n = g.n();
    let new_id = |v: Vertex| if v > u { v - 1 } else { v };
    let (d1, d2) = (n - 1, n);
    let mut edges: Vec<(Vertex, Vertex)> =
        g.edges().filter(|&(x, y)| x != u && y != u).map(|(x, y)| (new_id(x), new_id(y))).collect();
    for x in partition.n1.iter().chain(partition.n12.iter()) {
        edges.push((new_id(x), d1));
    }
    for x in partition.n2.iter().chain(partition.n12.iter()) {
        edges.push((new_id(x), d2));
    }
    Ok(VertexSplit {
        graph: Graph::from_edges(n + 1, edges)?,
        derivatives: (d1, d2),
        partition,
        delta: family.components[i].clone(),
        delta_star: family.components[j].clone(),
    })
}

/// What a vertex of an intermediate graph stands for, in input ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Origin {
    Original(Vertex),
    /// `u¹` of the given vertex.
    First(Vertex),
    /// `u²` of the given vertex.
    Second(Vertex),
}

/// One iteration of Split-U, with `δ_u` / `δ*_u` expressed as origins.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitStep {
    pub vertex: Vertex,
    pub delta: Vec<Origin>,
    pub delta_star: Vec<Origin>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    /// Graph on the `2|U|` derivatives; the derivatives of the `i`-th
    /// processed vertex are `2i` (`u¹`) and `2i + 1` (`u²`).
    pub graph: Graph,
    pub derivatives: BTreeMap<Vertex, (Vertex, Vertex)>,
    /// Input vertices outside `U`, removed at the end.
    pub dropped: VertexSet,
    pub steps: Vec<SplitStep>,
}

/// Splits the vertices of `set` in the given order, then keeps only the
/// derivatives.
pub fn split_u(g: &Graph, set: &[Vertex]) -> Result<SplitResult> {
    let mut seen = vec![false; g.n()];
    for &u in set {
        if u >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: u, n: g.n() });
        }
        if seen[u] {
            return Err(Error::DuplicateVertex(u));
        }
        seen[u] = true;
    }
    let mut h = g.clone();
    let mut origin: Vec<Origin> = (0..g.n()).map(Origin::Original).collect();
    let mut steps = Vec::with_capacity(set.len());
    for (step, &u) in set.iter().enumerate() {
        let cur = origin.iter().position(|&o| o == Origin::Original(u)).expect("unsplit vertex present");
        let split = match vertex_split(&h, cur) {
            Err(Error::EmptyDeltaStar(_)) => return Err(Error::SplitPrecondition { step, vertex: u }),
            other => other?,
        };
        let to_origins = |s: &VertexSet| s.iter().map(|v| origin[v]).collect::<Vec<_>>();
        steps.push(SplitStep { vertex: u, delta: to_origins(&split.delta), delta_star: to_origins(&split.delta_star) });
        origin.remove(cur);
        origin.push(Origin::First(u));
        origin.push(Origin::Second(u));
        h = split.graph;
    }

    let position: BTreeMap<Origin, Vertex> = origin.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut keep = Vec::with_capacity(2 * set.len());
    let mut derivatives = BTreeMap::new();
    for (i, &u) in set.iter().enumerate() {
        keep.push(position[&Origin::First(u)]);
        keep.push(position[&Origin::Second(u)]);
        derivatives.insert(u, (2 * i, 2 * i + 1));
    }
    let graph = Graph::from_predicate(keep.len(), |x, y| h.has_edge(keep[x], keep[y]));
    let dropped = (0..g.n()).filter(|&v| !seen[v]).collect();
    Ok(SplitResult { graph, derivatives, dropped, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::fixtures::{running_example, Running};

    #[test]
    fn running_example_single_split() {
        let g = running_example();
        let s = vertex_split(&g, Running::U).unwrap();
        assert_eq!(s.graph.n(), 9);
        let (d1, d2) = s.derivatives;
        // Running::U is 0, so every other id moves down by one
        let shifted = |v: Vertex| v - 1;
        let n1: VertexSet = s.graph.neighborhood(d1).unwrap();
        let n2: VertexSet = s.graph.neighborhood(d2).unwrap();
        assert_eq!(n1, [Running::U1, Running::U3].iter().map(|&v| shifted(v)).collect());
        assert_eq!(n2, [Running::U2, Running::U3].iter().map(|&v| shifted(v)).collect());
        assert!(!s.graph.has_edge(d1, d2));
        assert_eq!(s.graph.edge_count(), g.edge_count() - 3 + 4);
    }

    #[test]
    fn running_example_split_u_single() {
        let r = split_u(&running_example(), &[Running::U]).unwrap();
        assert_eq!(r.graph.n(), 2);
        assert_eq!(r.graph.edge_count(), 0);
        assert_eq!(r.derivatives[&Running::U], (0, 1));
        assert_eq!(r.dropped.len(), 7);
        assert_eq!(r.steps[0].delta, vec![Origin::Original(Running::V2)]);
        assert_eq!(r.steps[0].delta_star, vec![Origin::Original(Running::V3)]);
    }

    #[test]
    fn all_neighbours_in_n12() {
        // far components {2} and {3} with boundaries {1,4} and {1,5}
        let g = Graph::from_edges(6, [(0, 1), (0, 4), (0, 5), (1, 2), (4, 2), (1, 3), (5, 3)]).unwrap();
        let s = vertex_split(&g, 0).unwrap();
        assert_eq!(s.partition.n12.as_slice(), &[1]);
        let (d1, d2) = s.derivatives;
        assert!(s.graph.has_edge(0, d1) && s.graph.has_edge(0, d2));
    }

    #[test]
    fn n0_loses_its_edge() {
        // 4 is adjacent to u = 0 only and becomes 3 after the split
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (0, 4), (1, 3), (2, 5)]).unwrap();
        let s = vertex_split(&g, 0).unwrap();
        assert!(s.partition.n0.contains(4));
        let (d1, d2) = s.derivatives;
        assert!(!s.graph.has_edge(3, d1) && !s.graph.has_edge(3, d2));
    }

    #[test]
    fn precondition_errors() {
        let g = Graph::path(3);
        assert!(matches!(vertex_split(&g, 0), Err(Error::EmptyDeltaStar(0))));
        assert!(matches!(split_u(&g, &[0]), Err(Error::SplitPrecondition { step: 0, vertex: 0 })));
        assert!(matches!(split_u(&g, &[0, 0]), Err(Error::DuplicateVertex(0))));
        assert!(matches!(split_u(&g, &[5]), Err(Error::VertexOutOfRange { .. })));
    }
}
