//! The Corvaja–Zannier filtration `W_(i)` of `V_α`, its adapted basis, the
//! weighted quotient sum `Δ`, and the truncation-level arithmetic.

mod bounds;
mod levels;
mod tuples;

pub use bounds::{
    choose_alpha, delta_lower_bound, m_exact, m_paper, ratio_bound_check, truncation_report, RatioBoundReport,
    TruncationReport, EXACT_DELTA_CAP,
};
pub use levels::{big_delta, cz_basis, delta_map, filtration_dim, CZBasisElement, Filtration, FiltrationLevel};
pub use tuples::{enumerate_tuples, MultiIndex};

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiltrationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("forms do not define a zero-dimensional subvariety")]
    NotZeroDimensional,
    #[error("forms must share a common degree")]
    MixedDegree,
    #[error("level {index} has weight {weight}, but d·σ(i) = {product} > α = {alpha}")]
    WeightTooLarge {
        index: String,
        weight: u32,
        product: u64,
        alpha: u32,
    },
    #[error("α = {alpha} must exceed n·d = {nd}")]
    AlphaTooSmall { alpha: u64, nd: u64 },
    #[error("ε must lie strictly between 0 and 1")]
    EpsilonOutOfRange,
    #[error("α does not fit in 32 bits for these parameters")]
    AlphaOverflow,
    #[error("Δ differs across coordinates: {0:?}")]
    AsymmetricDelta(Vec<u64>),
    #[error("Δ = {delta} is below the closed-form lower bound {bound}")]
    LowerBoundViolated { delta: u64, bound: String },
    #[error("adapted basis has rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
}
