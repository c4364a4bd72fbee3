//! Split models: the symmetric power of a `p`-point set, the split
//! Severi-Brauer map with its cyclic action, and diagonal reduced norms.

mod census;
mod nrd;
mod severi;

pub use census::{sympower_census, CensusReport, FiberPoint, MultisetPoint, MAX_CENSUS_P};
pub use nrd::{
    corrected_witness, diagonal_nrd, distinct_eigenvalues, nrd_report, nrd_trials, stated_diagonal,
    DiagonalAlgebraElement, NrdReport,
};
pub use severi::{sb_split_map, CyclicFunctionField, SbReport, MAX_SB_P};

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("p = {0} is over the cap {1}")]
    OverCap(u32, u32),
    #[error("relation violated: {0}")]
    Relation(String),
    #[error("reduced norm {0} differs from the determinant {1}")]
    NormMismatch(String, String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn check_prime(p: u32, cap: u32) -> Result<(), SplitError> {
    if !crate::algebra::is_prime(p) {
        return Err(SplitError::NotPrime(p));
    }
    if p > cap {
        return Err(SplitError::OverCap(p, cap));
    }
    Ok(())
}
