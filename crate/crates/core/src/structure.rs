//! Components of `G ∖ N[u]`, their neighborhood domination closures, the
//! choice of `δ_u` / `δ*_u`, and the resulting partitions of `N(u)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::TrapezoidRep;
use crate::graph::{Graph, Vertex, VertexSet};

/// Components `V_1..V_ω` of `G ∖ N[u]` with their boundaries `N(V_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentFamily {
    pub u: Vertex,
    pub components: Vec<VertexSet>,
    pub boundaries: Vec<VertexSet>,
}

impl ComponentFamily {
    pub fn new(g: &Graph, u: Vertex) -> Result<Self> {
        let closed = g.closed_neighborhood(u)?;
        let rest: VertexSet = (0..g.n()).filter(|&v| !closed.contains(v)).collect();
        let components = g.components(&rest)?;
        let boundaries = components.iter().map(|c| g.set_neighborhood(c)).collect::<Result<_>>()?;
        Ok(ComponentFamily { u, components, boundaries })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidComponentIndex { index: i, count: self.len() })
        }
    }

    /// `D_u(V_i)`: indices `p` with `N(V_p) ⊆ N(V_i)`.
    pub fn closure(&self, i: usize) -> Result<Vec<usize>> {
        self.check(i)?;
        Ok((0..self.len()).filter(|&p| self.boundaries[p].is_subset(&self.boundaries[i])).collect())
    }

    /// `D*_u(V_i)`: the components outside `D_u(V_i)`.
    pub fn closure_complement(&self, i: usize) -> Result<Vec<usize>> {
        self.check(i)?;
        Ok((0..self.len()).filter(|&p| !self.boundaries[p].is_subset(&self.boundaries[i])).collect())
    }

    /// Components maximizing `|D_u(V_i)|`, ascending.
    pub fn masters(&self) -> Result<Vec<usize>> {
        if self.is_empty() {
            return Err(Error::NoComponents(self.u));
        }
        let sizes: Vec<usize> = (0..self.len()).map(|i| self.closure(i).map(|c| c.len())).collect::<Result<_>>()?;
        let best = *sizes.iter().max().expect("nonempty");
        Ok((0..self.len()).filter(|&i| sizes[i] == best).collect())
    }

    /// Members of `s` whose boundary is not strictly inside another member's.
    pub fn maximal(&self, s: &[usize]) -> Result<Vec<usize>> {
        for &i in s {
            self.check(i)?;
        }
        let strictly_inside = |j: usize, k: usize| {
            self.boundaries[j].is_subset(&self.boundaries[k]) && self.boundaries[j] != self.boundaries[k]
        };
        let mut out: Vec<usize> = s.iter().copied().filter(|&j| !s.iter().any(|&k| strictly_inside(j, k))).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Every `(master, maximal member of its closure complement)` pair.
    pub fn admissible_choices(&self) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        if self.is_empty() {
            return Ok(out);
        }
        for i in self.masters()? {
            for j in self.maximal(&self.closure_complement(i)?)? {
                out.push((i, j));
            }
        }
        Ok(out)
    }
}

pub fn components_of(g: &Graph, u: Vertex) -> Result<ComponentFamily> {
    ComponentFamily::new(g, u)
}

pub fn domination_closure(g: &Graph, u: Vertex, i: usize) -> Result<Vec<usize>> {
    ComponentFamily::new(g, u)?.closure(i)
}

pub fn master_components(g: &Graph, u: Vertex) -> Result<Vec<usize>> {
    ComponentFamily::new(g, u)?.masters()
}

pub fn closure_complement(g: &Graph, u: Vertex, i: usize) -> Result<Vec<usize>> {
    ComponentFamily::new(g, u)?.closure_complement(i)
}

pub fn maximal_components(g: &Graph, u: Vertex, s: &[usize]) -> Result<Vec<usize>> {
    ComponentFamily::new(g, u)?.maximal(s)
}

/// Component indices backing `δ_u` and `δ*_u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Deltas {
    pub delta: Option<usize>,
    pub delta_star: Option<usize>,
}

impl ComponentFamily {
    /// Smallest-index master, then the smallest-index maximal member of its
    /// closure complement. Components are ordered by smallest vertex id, so
    /// this is the smallest-id rule.
    pub fn select_deltas(&self) -> Result<Deltas> {
        if self.is_empty() {
            return Ok(Deltas { delta: None, delta_star: None });
        }
        let i = self.masters()?[0];
        let star = self.maximal(&self.closure_complement(i)?)?.first().copied();
        Ok(Deltas { delta: Some(i), delta_star: star })
    }
}

pub fn select_deltas(g: &Graph, u: Vertex) -> Result<Deltas> {
    ComponentFamily::new(g, u)?.select_deltas()
}

/// The four cells of `N(u)`, by adjacency to a "first" and "second" set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NPartition {
    pub n0: VertexSet,
    pub n1: VertexSet,
    pub n2: VertexSet,
    pub n12: VertexSet,
}

impl NPartition {
    fn classify(g: &Graph, u: Vertex, first: &VertexSet, second: &VertexSet) -> Result<Self> {
        let (mut n0, mut n1, mut n2, mut n12) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for x in g.neighborhood(u)?.iter() {
            match (g.adjacent_to_set(x, first), g.adjacent_to_set(x, second)) {
                (false, false) => n0.push(x),
                (true, false) => n1.push(x),
                (false, true) => n2.push(x),
                (true, true) => n12.push(x),
            }
        }
        let set = |v: Vec<Vertex>| v.into_iter().collect::<VertexSet>();
        Ok(NPartition { n0: set(n0), n1: set(n1), n2: set(n2), n12: set(n12) })
    }

    /// Cells in the order `N0, N1, N2, N12`.
    pub fn cells(&self) -> [&VertexSet; 4] {
        [&self.n0, &self.n1, &self.n2, &self.n12]
    }

    /// Equal after possibly exchanging `N1` and `N2`, i.e. after swapping
    /// the roles of the two derivatives.
    pub fn same_up_to_sides(&self, other: &NPartition) -> bool {
        self.n0 == other.n0
            && self.n12 == other.n12
            && ((self.n1 == other.n1 && self.n2 == other.n2) || (self.n1 == other.n2 && self.n2 == other.n1))
    }

    pub fn union(&self) -> VertexSet {
        self.n0.union(&self.n1).union(&self.n2).union(&self.n12)
    }
}

/// Partition of `N(u)` by adjacency to `δ_u` and `δ*_u`.
pub fn n_partition(g: &Graph, u: Vertex) -> Result<NPartition> {
    let family = ComponentFamily::new(g, u)?;
    let deltas = family.select_deltas()?;
    match (deltas.delta, deltas.delta_star) {
        (Some(i), Some(j)) => n_partition_with(g, &family, i, j),
        _ => Err(Error::EmptyDeltaStar(u)),
    }
}

/// Partition of `N(u)` for an explicit choice of components `i` (for `δ_u`)
/// and `j` (for `δ*_u`).
pub fn n_partition_with(g: &Graph, family: &ComponentFamily, i: usize, j: usize) -> Result<NPartition> {
    family.check(i)?;
    family.check(j)?;
    NPartition::classify(g, family.u, &family.components[i], &family.components[j])
}

/// Representation-based partition: `D1` / `D2` are the trapezoids entirely
/// left / right of `T_u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepPartition {
    pub partition: NPartition,
    pub d1: VertexSet,
    pub d2: VertexSet,
}

pub fn n_partition_rep(g: &Graph, r: &TrapezoidRep, u: Vertex) -> Result<RepPartition> {
    if let Some(m) = r.verify(g)? {
        return Err(Error::RepMismatch { u: m.u, v: m.v });
    }
    g.neighborhood(u)?;
    let d1: VertexSet = (0..r.len()).filter(|&v| r.left_of(v, u)).collect();
    let d2: VertexSet = (0..r.len()).filter(|&v| r.left_of(u, v)).collect();
    let partition = NPartition::classify(g, u, &d1, &d2)?;
    Ok(RepPartition { partition, d1, d2 })
}

/// `l(T_u) ≪ R(N0 ∪ N2)` and `R(N0 ∪ N1) ≪ r(T_u)`.
pub fn is_standard_rep(g: &Graph, r: &TrapezoidRep, u: Vertex) -> Result<bool> {
    if let Some(m) = r.verify(g)? {
        return Err(Error::RepMismatch { u: m.u, v: m.v });
    }
    let p = n_partition(g, u)?;
    let left = r.trap(u).left();
    let right = r.trap(u).right();
    let first = p.n0.union(&p.n2).iter().all(|v| r.line_left_of(&left, v));
    let second = p.n0.union(&p.n1).iter().all(|v| r.left_of_line(v, &right));
    Ok(first && second)
}
