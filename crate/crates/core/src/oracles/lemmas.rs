//! Structural statements checked on concrete representations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{LineRef, ParallelogramRep, PermutationRep, Side, TrapezoidRep};
use crate::graph::{Vertex, VertexSet};
use crate::oracles::recognize::{find_acyclic_permutation_rep, is_permutation_graph, MAX_EXHAUSTIVE};
use crate::orientation::{acyclic_wrt_pairs, is_acyclic_trapezoid_rep, PairSet};
use crate::split::{split_u, Origin, SplitResult};
use crate::structure::{is_standard_rep, n_partition_rep, n_partition_with, ComponentFamily};

/// Line of `r` matching every vertex of a Split-U result. `u¹` is the line
/// on the side of `δ_u`: the left line when `δ_u` lies left of `T_u`.
pub fn derivative_lines(r: &TrapezoidRep, split: &SplitResult) -> Result<Vec<LineRef>> {
    let mut first_side: Vec<Option<Side>> = vec![None; r.len()];
    for step in &split.steps {
        let u = step.vertex;
        let probe = *step.delta.first().ok_or(Error::EmptyDeltaStar(u))?;
        let left = match probe {
            Origin::Original(w) => r.left_of(w, u),
            Origin::First(w) | Origin::Second(w) => {
                let fs = first_side[w].expect("earlier step");
                let side = if matches!(probe, Origin::First(_)) { fs } else { other(fs) };
                r.line_left_of(&r.line(LineRef { vertex: w, side }), u)
            }
        };
        first_side[u] = Some(if left { Side::Left } else { Side::Right });
    }
    let mut out = vec![LineRef { vertex: 0, side: Side::Left }; split.graph.n()];
    for (&u, &(d1, d2)) in &split.derivatives {
        let s = first_side[u].expect("every split vertex has a step");
        out[d1] = LineRef { vertex: u, side: s };
        out[d2] = LineRef { vertex: u, side: other(s) };
    }
    Ok(out)
}

fn other(s: Side) -> Side {
    match s {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    }
}

/// Outcome of splitting `set` in a graph given by the representation `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCheck {
    pub vertices: usize,
    /// The lines of the split trapezoids realize the Split-U output.
    pub realizes: bool,
    /// That line rep is acyclic w.r.t. the derivative pairs.
    pub acyclic: bool,
    pub permutation: bool,
    /// `r` is standard w.r.t. every vertex of the set, in the input graph.
    pub standard: bool,
    /// Some permutation rep of the output is acyclic w.r.t. the derivative
    /// pairs; `None` when the output is too large to search.
    pub acyclic_rep_exists: Option<bool>,
}

impl SplitCheck {
    pub fn ok(&self) -> bool {
        self.realizes && self.acyclic && self.permutation
    }
}

/// `None` when some step of Split-U finds `δ*_u = ∅`.
pub fn check_split_realization(r: &TrapezoidRep, set: &[Vertex]) -> Result<Option<SplitCheck>> {
    let g = r.graph();
    let split = match split_u(&g, set) {
        Err(Error::SplitPrecondition { .. }) => return Ok(None),
        other => other?,
    };
    let lines = derivative_lines(r, &split)?;
    let rep = PermutationRep::new(lines.iter().map(|&l| r.line(l)).collect())?;
    let pairs = PairSet::new(lines.len(), (0..set.len()).map(|i| (2 * i, 2 * i + 1)).collect())?;
    let standard = set.iter().map(|&u| is_standard_rep(&g, r, u)).collect::<Result<Vec<_>>>()?.into_iter().all(|s| s);
    let acyclic_rep_exists = if split.graph.n() <= MAX_EXHAUSTIVE {
        Some(find_acyclic_permutation_rep(&split.graph, &pairs)?.is_some())
    } else {
        None
    };
    Ok(Some(SplitCheck {
        vertices: split.graph.n(),
        realizes: rep.graph() == split.graph,
        acyclic: acyclic_wrt_pairs(&rep, &pairs)?,
        permutation: is_permutation_graph(&split.graph)?,
        standard,
        acyclic_rep_exists,
    }))
}

/// Violation counts of the structural lemmas on one representation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub acyclic: bool,
    pub nonempty: usize,
    pub master: usize,
    pub separation: usize,
    pub choice: usize,
    /// First violation, for diagnostics.
    pub example: Option<String>,
}

impl LemmaReport {
    pub fn violations(&self) -> usize {
        usize::from(!self.acyclic) + self.nonempty + self.master + self.separation + self.choice
    }

    fn note(&mut self, what: String) {
        if self.example.is_none() {
            self.example = Some(what);
        }
    }
}

pub fn check_lemmas(p: &ParallelogramRep) -> Result<LemmaReport> {
    let r = p.as_trapezoid();
    let g = r.graph();
    let mirrored = r.vertical_flip();
    let mut report = LemmaReport { acyclic: is_acyclic_trapezoid_rep(r)?, ..Default::default() };
    if !report.acyclic {
        report.note("parallelogram rep is not acyclic".into());
    }
    for u in 0..g.n() {
        let family = ComponentFamily::new(&g, u)?;
        if family.is_empty() {
            continue;
        }
        let masters = family.masters()?;
        let stars: Vec<Vec<usize>> = (0..family.len()).map(|i| family.closure_complement(i)).collect::<Result<_>>()?;

        if masters.iter().any(|&i| !stars[i].is_empty()) && stars.iter().any(Vec::is_empty) {
            report.nonempty += 1;
            report.note(format!("u={u}: some closure complement is empty"));
        }

        for &i in &masters {
            let comp = &family.components[i];
            for rep in [r, &mirrored] {
                if rep.set_left_of(comp.iter(), u) {
                    for &j in &stars[i] {
                        if !rep.left_of_set(u, family.components[j].iter()) {
                            report.master += 1;
                            report.note(format!("u={u}: master {i} left of T_u but component {j} is not right of it"));
                        }
                    }
                }
            }
        }

        let deltas = family.select_deltas()?;
        let (Some(i), Some(j)) = (deltas.delta, deltas.delta_star) else { continue };
        let chosen = n_partition_with(&g, &family, i, j)?;
        let comp: &VertexSet = &family.components[i];
        let oriented = if r.set_left_of(comp.iter(), u) { r } else { &mirrored };
        if !oriented.set_left_of(comp.iter(), u) {
            report.separation += 1;
            report.note(format!("u={u}: master component straddles T_u"));
        } else if n_partition_rep(&g, oriented, u)?.partition != chosen {
            report.separation += 1;
            report.note(format!("u={u}: graph and rep partitions differ"));
        }

        for (i2, j2) in family.admissible_choices()? {
            if !n_partition_with(&g, &family, i2, j2)?.same_up_to_sides(&chosen) {
                report.choice += 1;
                report.note(format!("u={u}: choice ({i2},{j2}) changes the partition"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::random::random_parallelogram_rep;

    #[test]
    fn lemmas_hold_on_a_few_random_reps() {
        for seed in 0..40 {
            let report = check_lemmas(&random_parallelogram_rep(7, seed)).unwrap();
            assert_eq!(report.violations(), 0, "seed {seed}: {report:?}");
        }
    }

    #[test]
    fn split_of_two_disjoint_trapezoids_with_far_neighbours() {
        // 0 is split; its far components are 2 (left) and 3 (right)
        let r = TrapezoidRep::from_ints(&[(4, 8, 4, 8), (3, 9, 2, 10), (0, 1, 0, 1), (12, 13, 12, 13)]).unwrap();
        let g = r.graph();
        assert!(g.has_edge(0, 1));
        // N(0) = {1}, and 1 reaches neither far component, so δ*_0 is empty
        assert_eq!(check_split_realization(&r, &[0]).unwrap(), None);
    }
}
