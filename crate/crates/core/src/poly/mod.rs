//! Exact polynomial arithmetic, exp-polynomial expressions, curves and
//! Wronskians.

mod curve;
mod expr;
mod homogeneous;
mod monomial;
mod parse;
mod rational;
mod univariate;
mod wronskian;

pub use curve::{curve_compose, CompiledCurve, Curve};
pub use expr::{AnalyticExpr, CompiledExpr, ORDER_SEARCH_CAP};
pub use homogeneous::HomogeneousPoly;
pub use monomial::{monomial_basis, Monomial, MonomialIndex};
pub use parse::{parse_expr, parse_form, parse_input, parse_rational, InputKind, Parsed};
pub use rational::{ComplexRational, GaussInt, Rational};
pub use univariate::UniPoly;
pub use wronskian::{bareiss_det, wronskian};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("variable count mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("form is not homogeneous (term degrees {0:?})")]
    Inhomogeneous(Vec<u32>),
    #[error("exp() argument must be a polynomial in z")]
    NonPolynomialExponent,
    #[error("division by zero")]
    DivisionByZero,
    #[error("a curve needs at least two components, got {0}")]
    TooFewComponents(usize),
    #[error("all curve components are identically zero")]
    ZeroCurve,
    #[error("components share the common factor {0}; not a reduced representation")]
    NotReduced(String),
}
