use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::Side;
use crate::oracles::lemmas::derivative_lines;
use crate::oracles::nae::{assignment_to_flips, nae_sat_bruteforce, Assignment};
use crate::orientation::{acyclic_wrt_pairs, find_acyclic_flip, parallelogramize};
use crate::reduction::{build_gphi, build_hphi, build_pphi, Gphi, Hphi, MonotoneCnf, ReductionArtifacts};
use crate::split::split_u;

pub const MAX_VARIABLES: usize = 10;
pub const MAX_CLAUSES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub sat: bool,
    pub assignment: Option<Assignment>,
    /// Variables whose blocks the first acyclic flip subset flips.
    pub flip: Option<Vec<usize>>,
    /// The flips derived from `assignment` give an acyclic `R_P`.
    pub certificate_acyclic: Option<bool>,
    /// Straightening the flipped `R_H` produced a parallelogram rep of `H_φ`.
    pub parallelogram_verified: Option<bool>,
    pub split_recovers_pphi: bool,
    /// `sat` and `flip` agree; the converse is restricted to block flips.
    pub flip_restricted_converse: bool,
    pub consistent: bool,
}

pub fn check_equivalence(f: &MonotoneCnf, exec: Execution) -> Result<EquivalenceReport> {
    if f.n() > MAX_VARIABLES {
        return Err(Error::Guard { what: "variables", value: f.n(), limit: MAX_VARIABLES });
    }
    if f.k() > MAX_CLAUSES {
        return Err(Error::Guard { what: "clauses", value: f.k(), limit: MAX_CLAUSES });
    }
    let art = build_pphi(f)?;
    let gphi = build_gphi(&art)?;
    let hphi = build_hphi(&gphi.rep)?;

    let assignment = nae_sat_bruteforce(f, exec)?;
    let flip = find_acyclic_flip(&art.rp, &art.merge_pairs, &art.blocks, exec)?
        .map(|blocks| blocks.into_iter().map(|b| b + 1).collect::<Vec<_>>());

    let (certificate_acyclic, parallelogram_verified) = match &assignment {
        Some(a) => {
            let flips = assignment_to_flips(f, a)?;
            let cert = acyclic_wrt_pairs(&art.flip_blocks(&flips)?, &art.merge_pairs)?;
            let straightened = hphi
                .flip_blocks(&gphi, &art, &flips)
                .and_then(|rep| parallelogramize(&rep))
                .map(|p| p.as_trapezoid().verify(&hphi.graph).map(|m| m.is_none()));
            let verified = matches!(straightened, Ok(Ok(true)));
            (Some(cert), Some(verified))
        }
        None => (None, None),
    };

    let recovered = split_recovers_pphi(&art, &gphi, &hphi)?;
    let sat = assignment.is_some();
    let converse = sat == flip.is_some();
    let consistent =
        converse && recovered && certificate_acyclic.unwrap_or(true) && parallelogram_verified.unwrap_or(true);
    Ok(EquivalenceReport {
        n: f.n(),
        k: f.k(),
        m: art.m(),
        sat,
        assignment,
        flip,
        certificate_acyclic,
        parallelogram_verified,
        split_recovers_pphi: recovered,
        flip_restricted_converse: converse,
        consistent,
    })
}

/// Split-U on the originals of `H_φ` gives `P_φ`, with `u¹`/`u²` of every
/// original mapped to the lines of its merge pair on the side of `δ_u`.
pub fn split_recovers_pphi(art: &ReductionArtifacts, gphi: &Gphi, hphi: &Hphi) -> Result<bool> {
    let originals: Vec<usize> = (0..hphi.originals).collect();
    let split = match split_u(&hphi.graph, &originals) {
        Ok(s) => s,
        Err(Error::SplitPrecondition { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    if split.graph.n() != 2 * art.m() {
        return Ok(false);
    }
    let lines = derivative_lines(&hphi.rep, &split)?;
    let map: Vec<usize> = lines
        .iter()
        .map(|l| match l.side {
            Side::Left => gphi.lines[l.vertex].0,
            Side::Right => gphi.lines[l.vertex].1,
        })
        .collect();
    split.graph.labeled_equal(&art.pphi, &map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::fixtures::unsat_formula;
    use crate::reduction::sample_formula;

    #[test]
    fn sample_is_consistent() {
        let r = check_equivalence(&sample_formula(), Execution::Parallel).unwrap();
        assert!(r.sat && r.flip.is_some());
        assert_eq!(r.certificate_acyclic, Some(true));
        assert_eq!(r.parallelogram_verified, Some(true));
        assert!(r.split_recovers_pphi);
        assert!(r.consistent);
    }

    #[test]
    fn single_clause_is_consistent() {
        let f = MonotoneCnf::new(3, vec![[1, 2, 3]]).unwrap();
        let r = check_equivalence(&f, Execution::Sequential).unwrap();
        assert!(r.sat && r.flip.is_some() && r.consistent);
    }

    #[test]
    fn unsat_fixture_has_no_flip() {
        let r = check_equivalence(&unsat_formula(), Execution::Parallel).unwrap();
        assert!(!r.sat && r.flip.is_none());
        assert_eq!(r.parallelogram_verified, None);
        assert!(r.consistent);
    }

    #[test]
    fn guards() {
        let big = MonotoneCnf::new(11, (1..=9).map(|i| [i, i + 1, i + 2]).collect()).unwrap();
        assert!(matches!(check_equivalence(&big, Execution::Sequential), Err(Error::Guard { .. })));
    }
}
