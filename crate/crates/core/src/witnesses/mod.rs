//! Explicit witness objects, each with an independent re-checker.

use crate::classifier::ClassifyError;
use crate::numerics::Rational;

mod ac_failure;
mod adversary;
mod set_a;
mod superlevel_pieces;

pub use ac_failure::{ac_failure_intervals, verify_ac_failure, ACFailureWitness};
pub use adversary::{theorem1_adversary, verify_adversary, AdversaryLedger};
pub use set_a::{application_set_a, set_a, verify_set_a, SetAWitness};
pub use superlevel_pieces::{theorem2_construction, verify_theorem2, Theorem2Ledger};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("budget infeasible at n = {n}: at most {achievable} is reachable with measure 1/n^2, need {epsilon}")]
    BudgetInfeasible {
        n: u64,
        achievable: Box<Rational>,
        epsilon: Box<Rational>,
    },
    #[error("no AC-failure generator for {0}")]
    NoGenerator(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Outcome of re-checking a ledger: the list of failed checks.
pub type Verification = Result<(), Vec<String>>;

pub(crate) fn finish(failures: Vec<String>) -> Verification {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}

#[cfg(test)]
mod tests;
