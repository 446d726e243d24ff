use std::collections::{BTreeMap, BTreeSet};

use super::{
    check_distinct, first_mismatch, format_rational, min_gap, parse_ids, parse_rational, ranks, Line, Mismatch, Rational,
    TrapezoidJson, TrapezoidRepJson,
};
use crate::error::{Error, Rail, Result};
use crate::graph::{Graph, Vertex};

/// Top side `[a, b]` on L1 and bottom side `[c, d]` on L2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Trapezoid {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Trapezoid {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Trapezoid { a, b, c, d }
    }

    pub fn from_lines(left: &Line, right: &Line) -> Self {
        Trapezoid::new(left.top.clone(), right.top.clone(), left.bottom.clone(), right.bottom.clone())
    }

    pub fn left(&self) -> Line {
        Line::new(self.a.clone(), self.c.clone())
    }

    pub fn right(&self) -> Line {
        Line::new(self.b.clone(), self.d.clone())
    }

    pub fn side(&self, side: Side) -> Line {
        match side {
            Side::Left => self.left(),
            Side::Right => self.right(),
        }
    }

    /// Entirely left of `other` on both rails.
    pub fn left_of(&self, other: &Trapezoid) -> bool {
        self.b < other.a && self.d < other.c
    }

    pub fn intersects(&self, other: &Trapezoid) -> bool {
        !self.left_of(other) && !other.left_of(self)
    }

    pub fn is_parallelogram(&self) -> bool {
        &self.a - &self.c == &self.b - &self.d
    }

    fn mirrored(&self) -> Trapezoid {
        Trapezoid::new(-&self.b, -&self.a, -&self.d, -&self.c)
    }

    fn swapped(&self) -> Trapezoid {
        Trapezoid::new(self.c.clone(), self.d.clone(), self.a.clone(), self.b.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One of the two bounding lines of a trapezoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineRef {
    pub vertex: Vertex,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrapezoidRep {
    traps: Vec<Trapezoid>,
}

impl TrapezoidRep {
    pub fn new(traps: Vec<Trapezoid>) -> Result<Self> {
        for (i, t) in traps.iter().enumerate() {
            if t.a >= t.b || t.c >= t.d {
                return Err(Error::DegenerateTrapezoid(i));
            }
        }
        check_distinct(Rail::Top, traps.iter().flat_map(|t| [&t.a, &t.b]))?;
        check_distinct(Rail::Bottom, traps.iter().flat_map(|t| [&t.c, &t.d]))?;
        Ok(TrapezoidRep { traps })
    }

    pub fn from_ints(traps: &[(i64, i64, i64, i64)]) -> Result<Self> {
        use super::int;
        TrapezoidRep::new(traps.iter().map(|&(a, b, c, d)| Trapezoid::new(int(a), int(b), int(c), int(d))).collect())
    }

    pub fn len(&self) -> usize {
        self.traps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traps.is_empty()
    }

    pub fn traps(&self) -> &[Trapezoid] {
        &self.traps
    }

    pub fn trap(&self, v: Vertex) -> &Trapezoid {
        &self.traps[v]
    }

    pub fn line(&self, r: LineRef) -> Line {
        self.traps[r.vertex].side(r.side)
    }

    pub fn graph(&self) -> Graph {
        Graph::from_predicate(self.len(), |u, v| self.traps[u].intersects(&self.traps[v]))
    }

    /// `T_u ≪ T_v`.
    pub fn left_of(&self, u: Vertex, v: Vertex) -> bool {
        self.traps[u].left_of(&self.traps[v])
    }

    /// Every trapezoid of `set` lies left of `T_v`.
    pub fn set_left_of(&self, set: impl IntoIterator<Item = Vertex>, v: Vertex) -> bool {
        set.into_iter().all(|x| self.left_of(x, v))
    }

    /// `T_v` lies left of every trapezoid of `set`.
    pub fn left_of_set(&self, v: Vertex, set: impl IntoIterator<Item = Vertex>) -> bool {
        set.into_iter().all(|x| self.left_of(v, x))
    }

    /// A line strictly left of trapezoid `v` (left of its left line on both rails).
    pub fn line_left_of(&self, line: &Line, v: Vertex) -> bool {
        line.left_of(&self.traps[v].left())
    }

    /// Trapezoid `v` strictly left of a line.
    pub fn left_of_line(&self, v: Vertex, line: &Line) -> bool {
        self.traps[v].right().left_of(line)
    }

    pub fn vertical_flip(&self) -> Self {
        TrapezoidRep { traps: self.traps.iter().map(Trapezoid::mirrored).collect() }
    }

    pub fn horizontal_flip(&self) -> Self {
        TrapezoidRep { traps: self.traps.iter().map(Trapezoid::swapped).collect() }
    }

    pub fn renormalize(&self) -> Self {
        let top = ranks(&self.traps.iter().flat_map(|t| [&t.a, &t.b]).collect::<Vec<_>>());
        let bottom = ranks(&self.traps.iter().flat_map(|t| [&t.c, &t.d]).collect::<Vec<_>>());
        let traps = (0..self.len())
            .map(|i| {
                Trapezoid::new(top[2 * i].clone(), top[2 * i + 1].clone(), bottom[2 * i].clone(), bottom[2 * i + 1].clone())
            })
            .collect();
        TrapezoidRep { traps }
    }

    /// Smallest distance between two different endpoints on either rail.
    pub fn min_gap(&self) -> Option<Rational> {
        let top = min_gap(self.traps.iter().flat_map(|t| [&t.a, &t.b]));
        let bottom = min_gap(self.traps.iter().flat_map(|t| [&t.c, &t.d]));
        match (top, bottom) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    /// Swaps the rails for the given lines only; the lines must own a
    /// coordinate window free of every other line's endpoints on both rails.
    pub fn flip_lines(&self, lines: &[LineRef]) -> Result<Self> {
        if lines.is_empty() {
            return Ok(self.clone());
        }
        let chosen: BTreeSet<LineRef> = lines.iter().copied().collect();
        for r in &chosen {
            if r.vertex >= self.len() {
                return Err(Error::VertexOutOfRange { vertex: r.vertex, n: self.len() });
            }
        }
        let all_lines: Vec<(LineRef, Line)> = (0..self.len())
            .flat_map(|v| [Side::Left, Side::Right].map(|side| LineRef { vertex: v, side }))
            .map(|r| (r, self.line(r)))
            .collect();
        let mut lo: Option<&Rational> = None;
        let mut hi: Option<&Rational> = None;
        for (r, l) in &all_lines {
            if chosen.contains(r) {
                for x in [&l.top, &l.bottom] {
                    lo = Some(lo.map_or(x, |y| y.min(x)));
                    hi = Some(hi.map_or(x, |y| y.max(x)));
                }
            }
        }
        let (lo, hi) = (lo.expect("nonempty"), hi.expect("nonempty"));
        for (r, l) in &all_lines {
            if !chosen.contains(r) && [&l.top, &l.bottom].iter().any(|&x| lo <= x && x <= hi) {
                return Err(Error::BlockOverlap(format!(
                    "line {:?} of trapezoid {} has an endpoint in [{}, {}]",
                    r.side,
                    r.vertex,
                    format_rational(lo),
                    format_rational(hi)
                )));
            }
        }
        let traps = self
            .traps
            .iter()
            .enumerate()
            .map(|(v, t)| {
                let mut t = t.clone();
                if chosen.contains(&LineRef { vertex: v, side: Side::Left }) {
                    std::mem::swap(&mut t.a, &mut t.c);
                }
                if chosen.contains(&LineRef { vertex: v, side: Side::Right }) {
                    std::mem::swap(&mut t.b, &mut t.d);
                }
                t
            })
            .collect();
        TrapezoidRep::new(traps)
    }

    pub fn verify(&self, g: &Graph) -> Result<Option<Mismatch>> {
        first_mismatch(self.len(), g, |u, v| self.traps[u].intersects(&self.traps[v]))
    }

    pub fn to_json(&self) -> TrapezoidRepJson {
        let traps: BTreeMap<String, TrapezoidJson> = self
            .traps
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let j = TrapezoidJson {
                    a: format_rational(&t.a),
                    b: format_rational(&t.b),
                    c: format_rational(&t.c),
                    d: format_rational(&t.d),
                };
                (i.to_string(), j)
            })
            .collect();
        TrapezoidRepJson { traps }
    }

    pub fn from_json(doc: &TrapezoidRepJson) -> Result<Self> {
        let traps = parse_ids(&doc.traps)?
            .into_iter()
            .map(|t| {
                Ok(Trapezoid::new(parse_rational(&t.a)?, parse_rational(&t.b)?, parse_rational(&t.c)?, parse_rational(&t.d)?))
            })
            .collect::<Result<Vec<_>>>()?;
        TrapezoidRep::new(traps)
    }
}

/// Trapezoid rep whose left and right lines are parallel for every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelogramRep(TrapezoidRep);

impl ParallelogramRep {
    pub fn new(rep: TrapezoidRep) -> Result<Self> {
        if let Some(i) = rep.traps.iter().position(|t| !t.is_parallelogram()) {
            return Err(Error::NotParallelogram(i));
        }
        Ok(ParallelogramRep(rep))
    }

    pub fn from_traps(traps: Vec<Trapezoid>) -> Result<Self> {
        ParallelogramRep::new(TrapezoidRep::new(traps)?)
    }

    pub fn as_trapezoid(&self) -> &TrapezoidRep {
        &self.0
    }

    pub fn into_trapezoid(self) -> TrapezoidRep {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn graph(&self) -> Graph {
        self.0.graph()
    }

    pub fn vertical_flip(&self) -> Self {
        ParallelogramRep(self.0.vertical_flip())
    }

    pub fn horizontal_flip(&self) -> Self {
        ParallelogramRep(self.0.horizontal_flip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::int;

    #[test]
    fn intersection_examples() {
        let disjoint = TrapezoidRep::from_ints(&[(0, 1, 0, 1), (2, 3, 2, 3)]).unwrap();
        assert!(!disjoint.graph().has_edge(0, 1));
        assert!(disjoint.left_of(0, 1));
        assert!(!disjoint.left_of(1, 0));
        let nested = TrapezoidRep::from_ints(&[(0, 3, 0, 3), (1, 2, 1, 2)]).unwrap();
        assert!(nested.graph().has_edge(0, 1));
        let crossing = TrapezoidRep::from_ints(&[(0, 1, 2, 3), (2, 3, 0, 1)]).unwrap();
        assert!(crossing.graph().has_edge(0, 1));
        assert!(!crossing.left_of(0, 1) && !crossing.left_of(1, 0));
    }

    #[test]
    fn invariants_are_checked() {
        assert!(matches!(TrapezoidRep::from_ints(&[(1, 0, 0, 1)]), Err(Error::DegenerateTrapezoid(0))));
        assert!(matches!(
            TrapezoidRep::from_ints(&[(0, 1, 0, 1), (1, 2, 2, 3)]),
            Err(Error::DuplicateCoordinate { rail: Rail::Top, .. })
        ));
        let t = TrapezoidRep::from_ints(&[(0, 2, 0, 1)]).unwrap();
        assert!(matches!(ParallelogramRep::new(t), Err(Error::NotParallelogram(0))));
    }

    #[test]
    fn flips_keep_graph_and_parallelograms() {
        let p = ParallelogramRep::new(TrapezoidRep::from_ints(&[(0, 4, 2, 6), (3, 5, 1, 3), (7, 9, 5, 7)]).unwrap()).unwrap();
        let g = p.graph();
        for q in [p.vertical_flip(), p.horizontal_flip(), p.vertical_flip().horizontal_flip()] {
            assert_eq!(q.graph(), g);
        }
        assert_eq!(p.vertical_flip().vertical_flip(), p);
        assert_eq!(p.horizontal_flip().horizontal_flip(), p);
        let r = p.as_trapezoid().renormalize();
        assert_eq!(r.graph(), g);
        assert_eq!(r.renormalize(), r);
    }

    #[test]
    fn min_gap_and_line_relations() {
        let r = TrapezoidRep::from_ints(&[(0, 4, 0, 10), (7, 9, 12, 13)]).unwrap();
        assert_eq!(r.min_gap(), Some(int(1)));
        assert!(r.line_left_of(&Line::from_ints(-1, -1), 0));
        assert!(!r.line_left_of(&Line::from_ints(1, -1), 0));
        assert!(r.left_of_line(0, &Line::from_ints(5, 11)));
    }

    #[test]
    fn flip_lines_swaps_only_selected_sides() {
        // vertex 0 spans two windows: [0,3] holds its left line and vertex 1
        let r = TrapezoidRep::from_ints(&[(0, 10, 1, 11), (2, 3, 0, 2)]).unwrap();
        let sel = [LineRef { vertex: 0, side: Side::Left }, LineRef { vertex: 1, side: Side::Left }, LineRef { vertex: 1, side: Side::Right }];
        let f = r.flip_lines(&sel).unwrap();
        assert_eq!(f.trap(0).b, r.trap(0).b);
        assert_eq!(f.trap(0).a, r.trap(0).c);
        assert_eq!(f.graph(), r.graph());
        assert_eq!(f.flip_lines(&sel).unwrap(), r);
        let partial = [LineRef { vertex: 1, side: Side::Left }];
        assert!(matches!(r.flip_lines(&partial), Err(Error::BlockOverlap(_))));
    }
}
