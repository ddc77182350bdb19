//! Scenario files, the end-to-end inequality checks, regression suites and
//! report emission.

mod report;
mod scenario;
mod smt;
mod suite;
mod theorem_r;
mod wronskian_order;

pub use report::{format_sig12, Cell, Table};
pub use scenario::{EpsilonSpec, Scenario, ScenarioFile, TargetSpec, DEFAULT_TOL};
pub use smt::{nevanlinna_table, run_smt_scenario, SmtReport, SmtReportRow, TruncationMode};
pub use suite::{
    lemma_suite, random_zero_dimensional_system, wronskian_instances, FiltrationCaps, RandomSystemCaps, SuiteCaps,
    SuiteEntry, SuiteSummary, WronskianInstance,
};
pub use theorem_r::{independent_subsets, theorem_r_check, TheoremRReport, TheoremRRow};
pub use wronskian_order::{wronskian_order_check, WronskianOrderReport};

use crate::algebra::AlgebraError;
use crate::filtration::FiltrationError;
use crate::nevanlinna::NevanlinnaError;
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Nevanlinna(#[from] NevanlinnaError),
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error("{0}")]
    Io(String),
    #[error("targets are not in general position: {forms:?} (indices {subset:?}) share a common zero{}", witness.as_ref().map(|w| format!(" at {w}")).unwrap_or_default())]
    GeneralPosition {
        subset: Vec<usize>,
        forms: Vec<String>,
        witness: Option<String>,
    },
    #[error(
        "the curve is polynomial with n = {0} ≥ 2, so its image lies in an algebraic curve and it is algebraically degenerate"
    )]
    PolynomialCurve(usize),
    #[error("the curve must have polynomial components")]
    NotPolynomialCurve,
    #[error("form `{0}` is not linear")]
    NonLinearForm(String),
    #[error("{0} forms exceed the subset-enumeration cap of 12")]
    TooManyForms(usize),
    #[error("the Wronskian of the curve components vanishes identically")]
    DegenerateCurve,
    #[error("the curve lies in the hypersurface `{0}`")]
    CurveInTarget(String),
}

impl HarnessError {
    /// Process exit code: 3 for numerical non-convergence, 2 for every
    /// precondition failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Nevanlinna(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}
