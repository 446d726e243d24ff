use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::reduction::MonotoneCnf;

pub const MAX_VARIABLES: usize = 24;

/// Truth values of `x_1..x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    /// `bits[0]` is `x_1`.
    pub fn from_bits(bits: &[u8]) -> Self {
        Assignment(bits.iter().map(|&b| b != 0).collect())
    }

    /// Assignment whose bits, read from `x_1` down to `x_n`, spell `mask`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Assignment((0..n).map(|p| mask >> (n - 1 - p) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn complement(&self) -> Assignment {
        Assignment(self.0.iter().map(|b| !b).collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: Vec<&str> = self.0.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "({})", bits.join(","))
    }
}

/// Lexicographically smallest NAE-satisfying assignment (`x_1` most
/// significant), or `None`.
pub fn nae_sat_bruteforce(f: &MonotoneCnf, exec: Execution) -> Result<Option<Assignment>> {
    let n = f.n();
    if n > MAX_VARIABLES {
        return Err(Error::Guard { what: "variables", value: n, limit: MAX_VARIABLES });
    }
    // clause masks over bit positions (bit n - p holds x_p)
    let masks: Vec<u64> = f.clauses().iter().map(|c| c.iter().map(|&p| 1u64 << (n - p)).sum()).collect();
    let hit = exec.find_first(1u64 << n, |a| {
        masks.iter().all(|&m| {
            let t = a & m;
            t != 0 && t != m
        })
        .then_some(a)
    });
    Ok(hit.map(|a| Assignment::from_mask(a, n)))
}

/// Variables (1-based) whose blocks get flipped: the false ones.
pub fn assignment_to_flips(f: &MonotoneCnf, a: &Assignment) -> Result<Vec<usize>> {
    if a.len() != f.n() {
        return Err(Error::AssignmentLength { got: a.len(), expected: f.n() });
    }
    Ok((1..=f.n()).filter(|&p| !a.0[p - 1]).collect())
}
