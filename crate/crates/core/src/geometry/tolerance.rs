use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{
    first_mismatch, format_rational, frac, int, min_gap, parse_ids, parse_rational, IntervalJson, Mismatch,
    ParallelogramRep, Rational, ToleranceJson, Trapezoid, TrapezoidRep,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Closed interval `[l, r]` with tolerance `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToleranceInterval {
    pub l: Rational,
    pub r: Rational,
    pub t: Rational,
}

impl ToleranceInterval {
    pub fn new(l: Rational, r: Rational, t: Rational) -> Self {
        ToleranceInterval { l, r, t }
    }

    pub fn length(&self) -> Rational {
        &self.r - &self.l
    }

    /// Length of the intersection with `other` (0 when disjoint).
    pub fn overlap(&self, other: &ToleranceInterval) -> Rational {
        let lo = (&self.l).max(&other.l);
        let hi = (&self.r).min(&other.r);
        if hi > lo {
            hi - lo
        } else {
            Rational::zero()
        }
    }

    pub fn tolerates(&self, other: &ToleranceInterval) -> bool {
        self.overlap(other) >= (&self.t).min(&other.t).clone()
    }
}

/// The ⟨I, t⟩ model: adjacent iff the overlap reaches the smaller tolerance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToleranceRep {
    intervals: Vec<ToleranceInterval>,
}

impl ToleranceRep {
    /// Requires `l < r` and `t > 0`; tolerances beyond `|I|` are allowed.
    pub fn new(intervals: Vec<ToleranceInterval>) -> Result<Self> {
        for (i, iv) in intervals.iter().enumerate() {
            if iv.l >= iv.r {
                return Err(Error::EmptyInterval(i));
            }
            if !iv.t.is_positive() {
                return Err(Error::NonPositiveTolerance(i));
            }
        }
        Ok(ToleranceRep { intervals })
    }

    pub fn from_ints(intervals: &[(i64, i64, i64)]) -> Result<Self> {
        ToleranceRep::new(intervals.iter().map(|&(l, r, t)| ToleranceInterval::new(int(l), int(r), int(t))).collect())
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[ToleranceInterval] {
        &self.intervals
    }

    /// `t_i ≤ |I_i|` for every vertex.
    pub fn is_bounded(&self) -> bool {
        self.intervals.iter().all(|iv| iv.t <= iv.length())
    }

    pub fn graph(&self) -> Graph {
        Graph::from_predicate(self.len(), |u, v| self.intervals[u].tolerates(&self.intervals[v]))
    }

    pub fn verify(&self, g: &Graph) -> Result<Option<Mismatch>> {
        first_mismatch(self.len(), g, |u, v| self.intervals[u].tolerates(&self.intervals[v]))
    }

    /// Parallelogram `(l + t, r, l, r - t)` per vertex.
    ///
    /// When the direct formula produces a zero-width top side (`t = |I|`) or
    /// endpoint ties between vertices, every tolerance is first lowered by
    /// `g/4` and vertex `i` is shifted by `(i+1)·g/(4(n+1))`, where `g` is the
    /// smallest positive gap among the values compared on either rail. Every
    /// strict comparison then keeps its sign and every tie resolves towards
    /// intersection, so the graph is unchanged.
    pub fn to_parallelogram(&self) -> Result<ParallelogramRep> {
        if let Some(i) = self.intervals.iter().position(|iv| iv.t > iv.length()) {
            return Err(Error::UnboundedTolerance(i));
        }
        let direct = self
            .intervals
            .iter()
            .map(|iv| Trapezoid::new(&iv.l + &iv.t, iv.r.clone(), iv.l.clone(), &iv.r - &iv.t))
            .collect::<Vec<_>>();
        if let Ok(rep) = TrapezoidRep::new(direct) {
            return ParallelogramRep::new(rep);
        }

        let n = self.len() as i64;
        let top_values: Vec<Rational> = self.intervals.iter().flat_map(|iv| [&iv.l + &iv.t, iv.r.clone()]).collect();
        let bottom_values: Vec<Rational> = self.intervals.iter().flat_map(|iv| [iv.l.clone(), &iv.r - &iv.t]).collect();
        let gap = [min_gap(&top_values), min_gap(&bottom_values)]
            .into_iter()
            .flatten()
            .min()
            .unwrap_or_else(Rational::one);
        let eta = &gap / int(4);
        let traps = self
            .intervals
            .iter()
            .enumerate()
            .map(|(i, iv)| {
                let s = &gap * frac(i as i64 + 1, 4 * (n + 1));
                Trapezoid::new(&iv.l + &iv.t - &eta + &s, &iv.r + &s, &iv.l + &s, &iv.r - &iv.t + &eta + &s)
            })
            .collect();
        ParallelogramRep::new(TrapezoidRep::new(traps)?)
    }

    pub fn to_json(&self) -> ToleranceJson {
        let intervals: BTreeMap<String, IntervalJson> = self
            .intervals
            .iter()
            .enumerate()
            .map(|(i, iv)| {
                let j = IntervalJson { l: format_rational(&iv.l), r: format_rational(&iv.r), t: format_rational(&iv.t) };
                (i.to_string(), j)
            })
            .collect();
        ToleranceJson { intervals }
    }

    pub fn from_json(doc: &ToleranceJson) -> Result<Self> {
        let intervals = parse_ids(&doc.intervals)?
            .into_iter()
            .map(|j| Ok(ToleranceInterval::new(parse_rational(&j.l)?, parse_rational(&j.r)?, parse_rational(&j.t)?)))
            .collect::<Result<Vec<_>>>()?;
        ToleranceRep::new(intervals)
    }
}

impl ParallelogramRep {
    /// Bounded tolerance rep of the same graph: shear the top rail by
    /// `M = max(c - a) + 1`, then `l = c`, `t = a' - c`, `r = b'`.
    pub fn to_tolerance(&self) -> ToleranceRep {
        let traps = self.as_trapezoid().traps();
        let shear = traps.iter().map(|t| &t.c - &t.a).max().unwrap_or_else(Rational::zero) + Rational::one();
        let intervals = traps
            .iter()
            .map(|t| {
                let a = &t.a + &shear;
                let b = &t.b + &shear;
                ToleranceInterval::new(t.c.clone(), b, a - &t.c)
            })
            .collect();
        ToleranceRep::new(intervals).expect("sheared parallelograms give positive tolerances")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_adjacency() {
        let r = ToleranceRep::from_ints(&[(0, 10, 3), (8, 20, 5)]).unwrap();
        assert!(!r.graph().has_edge(0, 1));
        let r = ToleranceRep::from_ints(&[(0, 10, 3), (5, 20, 5)]).unwrap();
        assert!(r.graph().has_edge(0, 1));
        let r = ToleranceRep::from_ints(&[(0, 10, 10), (0, 10, 4)]).unwrap();
        assert!(r.graph().has_edge(0, 1));
        assert!(matches!(ToleranceRep::from_ints(&[(0, 1, 0)]), Err(Error::NonPositiveTolerance(0))));
        assert!(matches!(ToleranceRep::from_ints(&[(1, 1, 1)]), Err(Error::EmptyInterval(0))));
    }

    #[test]
    fn unbounded_tolerances_are_allowed_but_not_converted() {
        let r = ToleranceRep::from_ints(&[(0, 2, 5), (1, 3, 1)]).unwrap();
        assert!(!r.is_bounded());
        assert!(matches!(r.to_parallelogram(), Err(Error::UnboundedTolerance(0))));
    }

    #[test]
    fn direct_formula() {
        let p = ToleranceRep::from_ints(&[(0, 10, 3)]).unwrap().to_parallelogram().unwrap();
        assert_eq!(p.as_trapezoid().trap(0), &Trapezoid::new(int(3), int(10), int(0), int(7)));
    }

    #[test]
    fn extreme_tolerance_and_ties_are_perturbed() {
        // t = |I| for vertex 0; vertex 1's l + t ties with vertex 0's r
        let r = ToleranceRep::from_ints(&[(0, 10, 10), (5, 20, 5), (30, 40, 2)]).unwrap();
        let p = r.to_parallelogram().unwrap();
        assert_eq!(p.graph(), r.graph());
        assert!(p.graph().has_edge(0, 1));
    }

    #[test]
    fn far_apart_intervals_are_ordered() {
        let r = ToleranceRep::from_ints(&[(0, 4, 1), (10, 14, 2)]).unwrap();
        let p = r.to_parallelogram().unwrap();
        assert!(p.as_trapezoid().left_of(0, 1));
        assert_eq!(p.graph().edge_count(), 0);
    }

    #[test]
    fn parallelogram_back_to_tolerance() {
        let p = ToleranceRep::from_ints(&[(0, 10, 3), (5, 20, 5), (8, 9, 1)]).unwrap().to_parallelogram().unwrap();
        let t = p.to_tolerance();
        assert!(t.is_bounded());
        assert_eq!(t.graph(), p.graph());
        let single = ParallelogramRep::from_traps(vec![Trapezoid::new(int(5), int(6), int(0), int(1))]).unwrap();
        assert_eq!(single.to_tolerance().len(), 1);
    }
}
