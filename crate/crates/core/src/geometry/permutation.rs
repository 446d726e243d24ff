use std::collections::BTreeMap;

use super::{check_distinct, first_mismatch, format_rational, parse_ids, parse_rational, ranks, Line, LineJson, Mismatch, PermutationJson, Rational};
use crate::error::{Error, Rail, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Line segments between the rails; line `i` is vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationRep {
    lines: Vec<Line>,
}

impl PermutationRep {
    /// Rejects repeated coordinates on either rail.
    pub fn new(lines: Vec<Line>) -> Result<Self> {
        check_distinct(Rail::Top, lines.iter().map(|l| &l.top))?;
        check_distinct(Rail::Bottom, lines.iter().map(|l| &l.bottom))?;
        Ok(PermutationRep { lines })
    }

    pub fn from_ints(lines: &[(i64, i64)]) -> Result<Self> {
        PermutationRep::new(lines.iter().map(|&(t, b)| Line::from_ints(t, b)).collect())
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn line(&self, v: Vertex) -> &Line {
        &self.lines[v]
    }

    /// Intersection graph: an edge for every crossing pair.
    pub fn graph(&self) -> Graph {
        Graph::from_predicate(self.len(), |u, v| self.lines[u].crosses(&self.lines[v]))
    }

    /// `u ≪ v`: disjoint and `u` on the left.
    pub fn left_of(&self, u: Vertex, v: Vertex) -> bool {
        self.lines[u].left_of(&self.lines[v])
    }

    pub fn vertical_flip(&self) -> Self {
        PermutationRep { lines: self.lines.iter().map(Line::mirrored).collect() }
    }

    pub fn horizontal_flip(&self) -> Self {
        PermutationRep { lines: self.lines.iter().map(Line::swapped).collect() }
    }

    /// Coordinates replaced by their rank on each rail.
    pub fn renormalize(&self) -> Self {
        let top = ranks(&self.lines.iter().map(|l| &l.top).collect::<Vec<_>>());
        let bottom = ranks(&self.lines.iter().map(|l| &l.bottom).collect::<Vec<_>>());
        PermutationRep { lines: top.into_iter().zip(bottom).map(|(t, b)| Line::new(t, b)).collect() }
    }

    /// Swaps the rails for the lines of `block` only. The block must own a
    /// coordinate window that, on both rails, holds no endpoint of any other
    /// line.
    pub fn block_horizontal_flip(&self, block: &VertexSet) -> Result<Self> {
        if block.is_empty() {
            return Ok(self.clone());
        }
        for v in block {
            if v >= self.len() {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.len() });
            }
        }
        let ends = || block.iter().flat_map(|v| [&self.lines[v].top, &self.lines[v].bottom]);
        let lo = ends().min().expect("nonempty block");
        let hi = ends().max().expect("nonempty block");
        let inside = |x: &Rational| lo <= x && x <= hi;
        for (v, l) in self.lines.iter().enumerate() {
            if !block.contains(v) && (inside(&l.top) || inside(&l.bottom)) {
                return Err(Error::BlockOverlap(format!(
                    "line {v} has an endpoint in [{}, {}]",
                    format_rational(lo),
                    format_rational(hi)
                )));
            }
        }
        let lines = self
            .lines
            .iter()
            .enumerate()
            .map(|(v, l)| if block.contains(v) { l.swapped() } else { l.clone() })
            .collect();
        PermutationRep::new(lines)
    }

    /// First pair on which the rep and `g` disagree, if any.
    pub fn verify(&self, g: &Graph) -> Result<Option<Mismatch>> {
        first_mismatch(self.len(), g, |u, v| self.lines[u].crosses(&self.lines[v]))
    }

    /// Sub-representation on `ids` (new id `i` is `ids[i]`).
    pub fn restrict(&self, ids: &[Vertex]) -> Result<Self> {
        PermutationRep::new(ids.iter().map(|&v| self.lines[v].clone()).collect())
    }

    pub fn to_json(&self) -> PermutationJson {
        let lines: BTreeMap<String, LineJson> = self
            .lines
            .iter()
            .enumerate()
            .map(|(i, l)| (i.to_string(), LineJson { top: format_rational(&l.top), bottom: format_rational(&l.bottom) }))
            .collect();
        PermutationJson { lines }
    }

    pub fn from_json(doc: &PermutationJson) -> Result<Self> {
        let lines = parse_ids(&doc.lines)?
            .into_iter()
            .map(|l| Ok(Line::new(parse_rational(&l.top)?, parse_rational(&l.bottom)?)))
            .collect::<Result<Vec<_>>>()?;
        PermutationRep::new(lines)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{frac, int};

    #[test]
    fn crossing_defines_edges() {
        let parallel = PermutationRep::from_ints(&[(0, 0), (1, 1)]).unwrap();
        assert_eq!(parallel.graph().edge_count(), 0);
        let crossing = PermutationRep::from_ints(&[(0, 1), (1, 0)]).unwrap();
        assert!(crossing.graph().has_edge(0, 1));
        assert!(matches!(PermutationRep::from_ints(&[(0, 1), (0, 2)]), Err(Error::DuplicateCoordinate { rail: Rail::Top, .. })));
    }

    #[test]
    fn flips_are_involutions_and_keep_the_graph() {
        let r = PermutationRep::from_ints(&[(0, 3), (1, 0), (2, 4), (3, 1), (4, 2)]).unwrap();
        assert_eq!(r.vertical_flip().vertical_flip(), r);
        assert_eq!(r.horizontal_flip().horizontal_flip(), r);
        assert_eq!(r.vertical_flip().graph(), r.graph());
        assert_eq!(r.horizontal_flip().graph(), r.graph());
        let rn = r.renormalize();
        assert_eq!(rn.renormalize(), rn);
        assert_eq!(rn.graph(), r.graph());
    }

    #[test]
    fn block_flip() {
        // two crossing lines in [0,3], one far line at 10
        let r = PermutationRep::from_ints(&[(0, 3), (2, 1), (10, 11)]).unwrap();
        let block: VertexSet = [0, 1].into_iter().collect();
        let f = r.block_horizontal_flip(&block).unwrap();
        assert_eq!(f.line(0), &Line::from_ints(3, 0));
        assert_eq!(f.line(2), r.line(2));
        assert_eq!(f.graph(), r.graph());
        assert_eq!(f.block_horizontal_flip(&block).unwrap(), r);
        // a foreign endpoint inside the window is rejected
        let bad = PermutationRep::from_ints(&[(0, 3), (2, 1), (1, 11)]).unwrap();
        assert!(matches!(bad.block_horizontal_flip(&block), Err(Error::BlockOverlap(_))));
    }

    #[test]
    fn verify_reports_first_mismatch() {
        let r = PermutationRep::from_ints(&[(0, 1), (1, 0), (2, 2)]).unwrap();
        let g = r.graph();
        assert_eq!(r.verify(&g).unwrap(), None);
        let m = r.verify(&Graph::empty(3)).unwrap().unwrap();
        assert_eq!((m.u, m.v, m.in_graph), (0, 1, false));
        assert!(matches!(r.verify(&Graph::empty(2)), Err(Error::IdMismatch { .. })));
    }

    #[test]
    fn json_round_trip() {
        let r = PermutationRep::new(vec![Line::new(frac(1, 2), int(3)), Line::new(int(2), frac(-7, 3))]).unwrap();
        let text = serde_json::to_string(&r.to_json()).unwrap();
        assert_eq!(text, r#"{"lines":{"0":{"top":"1/2","bottom":"3/1"},"1":{"top":"2/1","bottom":"-7/3"}}}"#);
        let back: PermutationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(PermutationRep::from_json(&back).unwrap(), r);
    }
}
