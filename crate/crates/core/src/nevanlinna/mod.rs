//! Numerical Nevanlinna functionals of holomorphic curves: characteristic,
//! proximity, plain and truncated counting functions, zero localization
//! and the First Main Theorem residual.
//!
//! The origin term of the counting function is added,
//! `N(r) = Σ_{0<|z|≤r} k log(r/|z|) + ord_0 · log r`, which is the
//! convention under which `m + N − d·T` stays bounded when `Q∘f(0) = 0`.

mod functionals;
mod quadrature;
mod zeros;

pub use functionals::{
    characteristic, counting, fmt_residual, nevanlinna_rows, proximity, FmtPoint, FmtResidual, NevanlinnaRow,
    TargetZeros, Truncation,
};
pub use quadrature::{circle_winding, segment_integral, CircleQuadrature, Estimate};
pub use zeros::{
    aberth, locate_zeros, polynomial_zeros, ZeroRecord, ZeroSet, CERTIFY_RADIUS, RADIUS_PERTURB_REL, WINDING_TOL,
    ZERO_BAND_REL,
};

pub(crate) use zeros::safe_radius;

use num_complex::Complex64;

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NevanlinnaError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("composition is identically zero")]
    IdenticallyZero,
    #[error("a zero of the composition lies on |z| = {r}; try r = {suggested}")]
    RadiusOnZero { r: f64, suggested: f64 },
    #[error("quadrature did not converge within {nodes} nodes")]
    QuadratureNonConvergence { nodes: usize },
    #[error("integrand is not finite on the contour")]
    NonFinite,
    #[error("winding integral {re}+{im}i is not an integer")]
    NonIntegralWinding { re: f64, im: f64 },
    #[error("cannot isolate zeros near {near}")]
    InsufficientResolution { near: Complex64 },
    #[error("located {located} zeros but the outer winding number is {winding}")]
    CountMismatch { located: u64, winding: u64 },
    #[error("polynomial root iteration did not converge")]
    RootFinderNonConvergence,
    #[error("need at least two radii, got {0}")]
    GridTooSmall(usize),
}

impl NevanlinnaError {
    /// Failures of numerical resolution, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Self::QuadratureNonConvergence { .. }
                | Self::NonFinite
                | Self::NonIntegralWinding { .. }
                | Self::InsufficientResolution { .. }
                | Self::CountMismatch { .. }
                | Self::RootFinderNonConvergence
        )
    }
}
