//! Brute-force ground truth for the constructions: NAE-SAT, comparability
//! recognition, random generators, fixtures and end-to-end checks.

pub mod equivalence;
pub mod fixtures;
pub mod lemmas;
pub mod nae;
pub mod random;
pub mod recognize;

pub use equivalence::{check_equivalence, split_recovers_pphi, EquivalenceReport};
pub use nae::{assignment_to_flips, nae_sat_bruteforce, Assignment};
pub use random::{random_bounded_tolerance_rep, random_formula, random_parallelogram_rep};
pub use recognize::{is_comparability, is_permutation_graph};
