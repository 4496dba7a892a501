//! Extraction of `Nat`-valued terms over `Nat` variables into
//! primitive-recursive programs, and pointwise comparison against
//! evaluation.

mod compile;
mod differential;
mod encode;
pub mod pairing;
#[cfg(test)]
mod tests;

use prtt_checker::CheckError;
use prtt_core::Term;
use prtt_nbe::NbeError;
use prtt_prir::PrError;
use thiserror::Error;

pub use compile::{extract, extract_normal, Extractor};
pub use differential::{close, compare, differential_test, grid, DiffReport, Mismatch};
pub use encode::{encode_type, Card, Encoding};
pub use pairing::{pair, unpair, Helpers};

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("normal form is not first order: {0}")]
    NotFirstOrder(Term),
    #[error("type is not closed over ground data: {0}")]
    NotGroundType(Term),
    #[error("type does not live in U0: {0}")]
    NotLevelZero(Term),
    #[error("{0} is not a closed value of {1}")]
    NotAValue(Term, Term),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Eval(#[from] NbeError),
    #[error(transparent)]
    Program(#[from] PrError),
}
