//! Exact linear algebra on graded pieces `V_α` of `C[x_0, …, x_n]`.

mod graded;
mod linalg;
mod nss;

pub use graded::{
    binomial, graded_dim, hilbert_quotient, hilbert_quotient_echelon, ideal_graded_dim, ideal_piece,
    is_general_position, is_zero_dimensional, k_subsets, linear_common_zero, macaulay_degree, GeneralPosition,
    GradedPieceBasis,
};
pub use linalg::{bareiss_rank, solve_columns, EchelonBasis};
pub use nss::{nss_certificate, NssCertificate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("empty system of forms")]
    EmptySystem,
    #[error("forms live in different numbers of variables")]
    MixedArity,
    #[error("zero form in system")]
    ZeroForm,
    #[error("forms must share a common degree")]
    MixedDegree,
    #[error("expected {expected} forms, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("need more than n = {n} forms, found {q}")]
    TooFewForms { q: usize, n: usize },
    #[error("forms in {found} variables, expected {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
    #[error("not in general position: no certificate up to degree {0}")]
    NotGeneralPosition(u32),
}
