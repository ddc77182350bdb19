//! Exact and numerical machinery for checking the truncated second main
//! theorem for holomorphic curves meeting hypersurfaces in general position.
//!
//! * [`poly`]: Gaussian-rational forms, exp-polynomial expressions, curves,
//!   Wronskians and the input grammar.
//! * [`algebra`]: exact ranks of graded pieces, Hilbert quotients,
//!   zero-dimensionality, general position and Nullstellensatz certificates.
//! * [`filtration`]: the Corvaja–Zannier filtration of `V_α`, its adapted
//!   basis, `Δ`, and the truncation-level arithmetic.
//! * [`nevanlinna`]: characteristic, proximity and (truncated) counting
//!   functions, zero localization, First Main Theorem residuals.
//! * [`harness`]: scenarios, end-to-end checks and reports.

pub mod algebra;
pub mod filtration;
pub mod harness;
pub mod nevanlinna;
pub mod poly;
