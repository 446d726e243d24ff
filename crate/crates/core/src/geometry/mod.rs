//! Intersection models between two parallel rails (top rail L1, bottom rail
//! L2) and the interval/tolerance model.
//!
//! Coordinates are exact rationals. Only the order of endpoints on each
//! rail affects the induced graph of a rail model, so flips and
//! [`renormalize`](PermutationRep::renormalize) preserve it exactly.

mod permutation;
mod tolerance;
mod trapezoid;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use permutation::PermutationRep;
pub use tolerance::{ToleranceInterval, ToleranceRep};
pub use trapezoid::{LineRef, ParallelogramRep, Side, Trapezoid, TrapezoidRep};

use crate::error::{Error, Rail, Result};
use crate::graph::{Graph, Vertex};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Always `p/q`, also for integers.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A segment between the rails, given by its two endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub top: Rational,
    pub bottom: Rational,
}

impl Line {
    pub fn new(top: Rational, bottom: Rational) -> Self {
        Line { top, bottom }
    }

    pub fn from_ints(top: i64, bottom: i64) -> Self {
        Line::new(int(top), int(bottom))
    }

    /// Segments cross iff the two rails order them differently.
    pub fn crosses(&self, other: &Line) -> bool {
        (self.top < other.top) != (self.bottom < other.bottom)
    }

    /// Strictly left of `other` on both rails.
    pub fn left_of(&self, other: &Line) -> bool {
        self.top < other.top && self.bottom < other.bottom
    }

    /// Slope surrogate: bottom minus top displacement.
    pub fn theta_key(&self) -> Rational {
        &self.bottom - &self.top
    }

    pub fn shifted(&self, by: &Rational) -> Line {
        Line::new(&self.top + by, &self.bottom + by)
    }

    fn mirrored(&self) -> Line {
        Line::new(-&self.top, -&self.bottom)
    }

    fn swapped(&self) -> Line {
        Line::new(self.bottom.clone(), self.top.clone())
    }
}

/// Pair of vertices on which a representation disagrees with a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub u: Vertex,
    pub v: Vertex,
    /// Whether `uv` is an edge of the graph being checked against.
    pub in_graph: bool,
}

pub(crate) fn first_mismatch(n: usize, g: &Graph, mut adjacent: impl FnMut(Vertex, Vertex) -> bool) -> Result<Option<Mismatch>> {
    if n != g.n() {
        return Err(Error::IdMismatch { rep: n, graph: g.n() });
    }
    for u in 0..n {
        for v in u + 1..n {
            let in_graph = g.has_edge(u, v);
            if adjacent(u, v) != in_graph {
                return Ok(Some(Mismatch { u, v, in_graph }));
            }
        }
    }
    Ok(None)
}

pub(crate) fn check_distinct<'a>(rail: Rail, values: impl IntoIterator<Item = &'a Rational>) -> Result<()> {
    let mut v: Vec<&Rational> = values.into_iter().collect();
    v.sort();
    match v.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::DuplicateCoordinate { rail, value: format_rational(w[0]) }),
        None => Ok(()),
    }
}

/// Rank (1-based) of every value among all values; values must be distinct.
pub(crate) fn ranks(values: &[&Rational]) -> Vec<Rational> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].cmp(values[j]));
    let mut out = vec![Rational::zero(); values.len()];
    for (rank, i) in order.into_iter().enumerate() {
        out[i] = int(rank as i64 + 1);
    }
    out
}

/// Smallest positive gap between consecutive values.
pub(crate) fn min_gap<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    let mut v: Vec<&Rational> = values.into_iter().collect();
    v.sort();
    v.windows(2)
        .map(|w| w[1] - w[0])
        .filter(|d| d.is_positive())
        .min()
}

pub(crate) fn parse_ids<T>(map: &BTreeMap<String, T>) -> Result<Vec<&T>> {
    let n = map.len();
    let mut out: Vec<Option<&T>> = vec![None; n];
    for (k, v) in map {
        let id: usize = k.trim().parse().map_err(|_| Error::SparseIds(n))?;
        if id >= n || out[id].is_some() {
            return Err(Error::SparseIds(n));
        }
        out[id] = Some(v);
    }
    Ok(out.into_iter().map(|x| x.expect("dense ids")).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineJson {
    pub top: String,
    pub bottom: String,
}

/// `{"lines": {"id": {"top": "p/q", "bottom": "p/q"}}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationJson {
    pub lines: BTreeMap<String, LineJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrapezoidJson {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

/// `{"traps": {"id": {"a": .., "b": .., "c": .., "d": ..}}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrapezoidRepJson {
    pub traps: BTreeMap<String, TrapezoidJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub l: String,
    pub r: String,
    pub t: String,
}

/// `{"intervals": {"id": {"l": .., "r": .., "t": ..}}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToleranceJson {
    pub intervals: BTreeMap<String, IntervalJson>,
}

/// Any of the three rep documents, told apart by their top-level key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RepJson {
    Permutation(PermutationJson),
    Trapezoid(TrapezoidRepJson),
    Tolerance(ToleranceJson),
}
