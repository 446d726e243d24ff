//! Transitive orientations induced by permutation representations, the
//! merged digraph obtained by contracting vertex pairs, and acyclicity of
//! permutation and trapezoid representations.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{int, Line, ParallelogramRep, PermutationRep, Rational, Trapezoid, TrapezoidRep};
use crate::graph::{Graph, Vertex, VertexSet};

/// Monotone surrogate for the angle of a line with the bottom rail.
pub fn theta_key(line: &Line) -> Rational {
    line.theta_key()
}

/// Perfect matching on `0..2k`, stored as `k` unordered pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSet {
    pairs: Vec<(Vertex, Vertex)>,
    owner: Vec<usize>,
}

impl PairSet {
    /// `n` is the number of ids to cover.
    pub fn new(n: usize, pairs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (i, &(x, y)) in pairs.iter().enumerate() {
            if x == y {
                return Err(Error::InvalidPairs(format!("pair {i} repeats id {x}")));
            }
            for v in [x, y] {
                if v >= n {
                    return Err(Error::InvalidPairs(format!("id {v} out of range")));
                }
                if owner[v] != usize::MAX {
                    return Err(Error::InvalidPairs(format!("id {v} appears twice")));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPairs(format!("id {v} is not covered")));
        }
        Ok(PairSet { pairs, owner })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    /// Index of the pair containing `v`.
    pub fn owner(&self, v: Vertex) -> usize {
        self.owner[v]
    }

    /// Number of ids covered.
    pub fn universe(&self) -> usize {
        self.owner.len()
    }
}

/// Set of arcs `x -> y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub n: usize,
    pub arcs: BTreeSet<(Vertex, Vertex)>,
}

impl Orientation {
    pub fn has_arc(&self, x: Vertex, y: Vertex) -> bool {
        self.arcs.contains(&(x, y))
    }

    /// Every arc lies on an edge of `g`, every edge carries exactly one arc,
    /// and `x -> y -> z` forces `x -> z`.
    pub fn is_transitive_orientation_of(&self, g: &Graph) -> bool {
        if self.n != g.n() || self.arcs.len() != g.edge_count() {
            return false;
        }
        if !self.arcs.iter().all(|&(x, y)| g.has_edge(x, y) && !self.has_arc(y, x)) {
            return false;
        }
        let mut out = vec![Vec::new(); self.n];
        for &(x, y) in &self.arcs {
            out[x].push(y);
        }
        self.arcs.iter().all(|&(x, y)| out[y].iter().all(|&z| self.has_arc(x, z)))
    }

    pub fn reversed(&self) -> Orientation {
        Orientation { n: self.n, arcs: self.arcs.iter().map(|&(x, y)| (y, x)).collect() }
    }
}

/// Φ_R: `x -> y` for every crossing pair with `key(x) < key(y)`.
pub fn transitive_orientation(rep: &PermutationRep) -> Result<Orientation> {
    let keys: Vec<Rational> = rep.lines().iter().map(theta_key).collect();
    let mut arcs = BTreeSet::new();
    for x in 0..rep.len() {
        for y in x + 1..rep.len() {
            if !rep.line(x).crosses(rep.line(y)) {
                continue;
            }
            match keys[x].cmp(&keys[y]) {
                Ordering::Less => arcs.insert((x, y)),
                Ordering::Greater => arcs.insert((y, x)),
                Ordering::Equal => return Err(Error::SlopeTie(x, y)),
            };
        }
    }
    Ok(Orientation { n: rep.len(), arcs })
}

/// F_R: one vertex per pair. Arcs inside a pair are kept aside as loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergedDigraph {
    pub n: usize,
    pub arcs: BTreeSet<(usize, usize)>,
    pub loops: BTreeSet<usize>,
}

impl MergedDigraph {
    /// Shortest directed cycle (a loop counts as length one), if any.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        if let Some(&p) = self.loops.iter().next() {
            return Some(vec![p]);
        }
        let mut out = vec![Vec::new(); self.n];
        for &(x, y) in &self.arcs {
            out[x].push(y);
        }
        let mut best: Option<Vec<usize>> = None;
        for start in 0..self.n {
            // BFS from start's successors back to start
            let mut parent = vec![usize::MAX; self.n];
            let mut queue = VecDeque::new();
            for &y in &out[start] {
                if parent[y] == usize::MAX {
                    parent[y] = start;
                    queue.push_back(y);
                }
            }
            let mut closed = false;
            while let Some(x) = queue.pop_front() {
                if x == start {
                    closed = true;
                    break;
                }
                for &y in &out[x] {
                    if parent[y] == usize::MAX {
                        parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if !closed {
                continue;
            }
            let mut cycle = vec![start];
            let mut x = parent[start];
            while x != start {
                cycle.push(x);
                x = parent[x];
            }
            cycle.reverse();
            cycle.rotate_right(1);
            if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                best = Some(cycle);
            }
        }
        best
    }

    pub fn is_acyclic(&self) -> bool {
        if !self.loops.is_empty() {
            return false;
        }
        // Kahn
        let mut indeg = vec![0usize; self.n];
        let mut out = vec![Vec::new(); self.n];
        for &(x, y) in &self.arcs {
            out[x].push(y);
            indeg[y] += 1;
        }
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(x) = stack.pop() {
            seen += 1;
            for &y in &out[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        seen == self.n
    }
}

pub fn merge_pairs(phi: &Orientation, pairs: &PairSet) -> Result<MergedDigraph> {
    if pairs.universe() != phi.n {
        return Err(Error::InvalidPairs(format!("pairs cover {} ids, orientation has {}", pairs.universe(), phi.n)));
    }
    let mut arcs = BTreeSet::new();
    let mut loops = BTreeSet::new();
    for &(x, y) in &phi.arcs {
        let (px, py) = (pairs.owner(x), pairs.owner(y));
        if px == py {
            loops.insert(px);
        } else {
            arcs.insert((px, py));
        }
    }
    Ok(MergedDigraph { n: pairs.len(), arcs, loops })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicVerdict {
    pub acyclic: bool,
    /// Pair indices along a shortest directed cycle of F_R.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

pub fn is_acyclic_wrt_pairs(rep: &PermutationRep, pairs: &PairSet) -> Result<AcyclicVerdict> {
    let merged = merge_pairs(&transitive_orientation(rep)?, pairs)?;
    if merged.is_acyclic() {
        Ok(AcyclicVerdict { acyclic: true, witness: None })
    } else {
        Ok(AcyclicVerdict { acyclic: false, witness: merged.shortest_cycle() })
    }
}

/// Cheaper yes/no variant used inside enumerations.
pub fn acyclic_wrt_pairs(rep: &PermutationRep, pairs: &PairSet) -> Result<bool> {
    Ok(merge_pairs(&transitive_orientation(rep)?, pairs)?.is_acyclic())
}

/// Lines `2v` (left) and `2v + 1` (right) of every trapezoid, paired per vertex.
pub fn split_lines_rep(rep: &TrapezoidRep) -> (PermutationRep, PairSet) {
    let lines = rep.traps().iter().flat_map(|t| [t.left(), t.right()]).collect();
    let lines = PermutationRep::new(lines).expect("trapezoid endpoints are distinct");
    let pairs = PairSet::new(2 * rep.len(), (0..rep.len()).map(|v| (2 * v, 2 * v + 1)).collect())
        .expect("consecutive pairs form a matching");
    (lines, pairs)
}

pub fn is_acyclic_trapezoid_rep(rep: &TrapezoidRep) -> Result<bool> {
    let (lines, pairs) = split_lines_rep(rep);
    acyclic_wrt_pairs(&lines, &pairs)
}

/// Searches block flip subsets in increasing bitmask order (bit `i` flips
/// `blocks[i]`) and returns the first whose flipped rep is acyclic.
pub fn find_acyclic_flip(
    rep: &PermutationRep,
    pairs: &PairSet,
    blocks: &[VertexSet],
    exec: Execution,
) -> Result<Option<Vec<usize>>> {
    if blocks.len() >= 63 {
        return Err(Error::Guard { what: "blocks", value: blocks.len(), limit: 62 });
    }
    let covered: Vec<Vertex> = blocks.iter().flat_map(|b| b.iter()).collect();
    let union: VertexSet = covered.iter().copied().collect();
    if union.len() != covered.len() || union.len() != rep.len() {
        return Err(Error::BlockOverlap("blocks must partition the line ids".into()));
    }
    // surfaces slot violations once, before the enumeration
    for b in blocks {
        rep.block_horizontal_flip(b)?;
    }
    let hit = exec.find_first(1u64 << blocks.len(), |mask| {
        let mut flipped = rep.clone();
        for (i, b) in blocks.iter().enumerate() {
            if mask >> i & 1 == 1 {
                flipped = flipped.block_horizontal_flip(b).expect("checked above");
            }
        }
        match acyclic_wrt_pairs(&flipped, pairs) {
            Ok(true) => Some(Ok(mask)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        }
    });
    match hit {
        None => Ok(None),
        Some(Err(e)) => Err(e),
        Some(Ok(mask)) => Ok(Some((0..blocks.len()).filter(|i| mask >> i & 1 == 1).collect())),
    }
}

/// Value `base + eps_count·ε` for an infinitesimal `ε > 0`, ordered
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Slack {
    base: Rational,
    eps: i64,
}

impl Slack {
    fn add(&self, other: &Slack) -> Slack {
        Slack { base: &self.base + &other.base, eps: self.eps + other.eps }
    }
}

/// Straightens an acyclic trapezoid rep into a parallelogram rep with the
/// same top coordinates and the same endpoint order on both rails.
///
/// Each vertex gets one displacement `δ(v)` and both of its lines move to
/// `bottom = top - δ(v)`. Keeping the bottom order is a system of strict
/// difference constraints between consecutive bottom endpoints, solved by
/// longest paths with an infinitesimal slack per constraint; a positive
/// cycle means no such straightening exists.
pub fn parallelogramize(rep: &TrapezoidRep) -> Result<ParallelogramRep> {
    if !is_acyclic_trapezoid_rep(rep)? {
        return Err(Error::NotAcyclic);
    }
    let n = rep.len();
    // (vertex, top, bottom) for every line, sorted by bottom
    let mut lines: Vec<(Vertex, &Rational, &Rational)> =
        rep.traps().iter().enumerate().flat_map(|(v, t)| [(v, &t.a, &t.c), (v, &t.b, &t.d)]).collect();
    lines.sort_by(|x, y| x.2.cmp(y.2));

    // δ(x_v) >= δ(y_v) + (top_x - top_y) + ε for x directly before y
    let mut edges: Vec<(usize, usize, Slack)> = Vec::with_capacity(lines.len());
    for w in lines.windows(2) {
        let (vx, tx, _) = w[0];
        let (vy, ty, _) = w[1];
        let weight = Slack { base: tx - ty, eps: 1 };
        if vx == vy {
            if weight.base.is_negative() {
                continue;
            }
            return Err(Error::Infeasible);
        }
        edges.push((vy, vx, weight));
    }

    let mut delta = vec![Slack { base: Rational::zero(), eps: 0 }; n];
    let mut converged = false;
    for _ in 0..=n {
        let mut changed = false;
        for (from, to, w) in &edges {
            let cand = delta[*from].add(w);
            if cand > delta[*to] {
                delta[*to] = cand;
                changed = true;
            }
        }
        if !changed {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Infeasible);
    }

    // pick a concrete ε that keeps every strict inequality
    let mut eps = Rational::one();
    for (from, to, w) in &edges {
        let base_diff = &delta[*to].base - &delta[*from].base;
        let eps_diff = delta[*to].eps - delta[*from].eps;
        let room = &base_diff - &w.base;
        if room.is_positive() && eps_diff < 0 {
            let bound = room / int(-eps_diff);
            if bound < eps {
                eps = bound;
            }
        }
    }
    eps /= int(2);
    let shift: Vec<Rational> = delta.iter().map(|d| &d.base + &eps * int(d.eps)).collect();

    let traps = rep
        .traps()
        .iter()
        .zip(&shift)
        .map(|(t, s)| Trapezoid::new(t.a.clone(), t.b.clone(), &t.a - s, &t.b - s))
        .collect();
    let out = ParallelogramRep::new(TrapezoidRep::new(traps)?)?;
    if out.as_trapezoid().verify(&rep.graph())?.is_some() {
        return Err(Error::Infeasible);
    }
    Ok(out)
}
