//! Simple undirected graphs over dense integer ids, plus the JSON and DOT
//! exchange formats.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Sorted, duplicate-free list of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from ids in any order; duplicates are an error.
    pub fn try_from_vec(mut ids: Vec<Vertex>) -> Result<Self> {
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        Ok(VertexSet(ids))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.iter().any(|v| other.contains(v))
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut ids: Vec<Vertex> = iter.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Graph { adj }
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    /// Strict constructor: rejects self-loops, duplicates and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj })
    }

    /// Builds the graph whose edges are the pairs accepted by `adjacent`.
    pub fn from_predicate<F: FnMut(Vertex, Vertex) -> bool>(n: usize, mut adjacent: F) -> Self {
        let mut adj = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        Graph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adj[u].len()
    }

    fn check(&self, u: Vertex) -> Result<()> {
        if u >= self.n() {
            Err(Error::VertexOutOfRange { vertex: u, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// Borrowed adjacency list of `u` (sorted).
    pub fn adjacent(&self, u: Vertex) -> &[Vertex] {
        &self.adj[u]
    }

    pub fn neighborhood(&self, u: Vertex) -> Result<VertexSet> {
        self.check(u)?;
        Ok(VertexSet(self.adj[u].clone()))
    }

    pub fn closed_neighborhood(&self, u: Vertex) -> Result<VertexSet> {
        self.check(u)?;
        Ok(self.adj[u].iter().copied().chain([u]).collect())
    }

    /// N(U): neighbours of members of `set` that are not themselves in `set`.
    pub fn set_neighborhood(&self, set: &VertexSet) -> Result<VertexSet> {
        for v in set {
            self.check(v)?;
        }
        Ok(set
            .iter()
            .flat_map(|v| self.adj[v].iter().copied())
            .filter(|&x| !set.contains(x))
            .collect())
    }

    /// True if some vertex of `set` is adjacent to `x`.
    pub fn adjacent_to_set(&self, x: Vertex, set: &VertexSet) -> bool {
        self.adj[x].iter().any(|&y| set.contains(y))
    }

    /// Connected components of the subgraph induced by `restrict`, ordered by
    /// smallest member.
    pub fn components(&self, restrict: &VertexSet) -> Result<Vec<VertexSet>> {
        let n = self.n();
        let mut inside = vec![false; n];
        for v in restrict {
            self.check(v)?;
            inside[v] = true;
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in restrict {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for &y in &self.adj[x] {
                    if inside[y] && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp.into_iter().collect());
        }
        Ok(out)
    }

    /// G[S] relabelled to `0..|S|`; the returned vector maps new id -> old id.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, v) in s.iter().enumerate() {
            self.check(v)?;
            new_id[v] = i;
        }
        let adj = s
            .iter()
            .map(|v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| new_id[w] != usize::MAX)
                    .map(|&w| new_id[w])
                    .collect()
            })
            .collect();
        Ok((Graph { adj }, s.as_slice().to_vec()))
    }

    pub fn complement(&self) -> Graph {
        Graph::from_predicate(self.n(), |u, v| !self.has_edge(u, v))
    }

    /// True iff `map` (old id -> id in `other`) is an isomorphism onto `other`.
    pub fn labeled_equal(&self, other: &Graph, map: &[Vertex]) -> Result<bool> {
        if map.len() != self.n() {
            return Err(Error::NotBijective(format!(
                "map has {} entries for {} vertices",
                map.len(),
                self.n()
            )));
        }
        let mut hit = vec![false; map.len()];
        for &w in map {
            if w >= map.len() || std::mem::replace(&mut hit[w], true) {
                return Err(Error::NotBijective(format!("image {w} is out of range or repeated")));
            }
        }
        if other.n() != self.n() || other.edge_count() != self.edge_count() {
            return Ok(false);
        }
        Ok(self.edges().all(|(u, v)| other.has_edge(map[u], map[v])))
    }

    pub fn to_json(&self, labels: Option<&[String]>) -> GraphJson {
        GraphJson {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            labels: labels.map(|ls| ls.iter().enumerate().map(|(i, l)| (i.to_string(), l.clone())).collect()),
        }
    }

    pub fn from_json(doc: &GraphJson) -> Result<Graph> {
        Graph::from_edges(doc.n, doc.edges.iter().map(|e| (e[0], e[1])))
    }

    /// Undirected DOT text; `labels` become node labels when given.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("graph {\n");
        for v in 0..self.n() {
            match labels.and_then(|ls| ls.get(v)) {
                Some(l) => writeln!(out, "  {v} [label=\"{}\"];", l.replace('"', "\\\"")).unwrap(),
                None => writeln!(out, "  {v};").unwrap(),
            }
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// `{"n": int, "edges": [[u,v], ...], "labels": {"id": "name"}?}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}
