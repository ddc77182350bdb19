#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use smt_truncation::poly::{monomial_basis, ComplexRational, HomogeneousPoly, UniPoly};

pub fn gauss(re: i64, im: i64) -> ComplexRational {
    ComplexRational::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

/// Small Gaussian integers, zero about a third of the time.
pub fn coefficient() -> impl Strategy<Value = ComplexRational> {
    prop_oneof![
        1 => Just(ComplexRational::zero()),
        2 => (-4i64..=4, -2i64..=2).prop_map(|(a, b)| gauss(a, b)),
    ]
}

pub fn form(nvars: usize, degree: u32) -> impl Strategy<Value = HomogeneousPoly> {
    let basis = monomial_basis(nvars, degree);
    proptest::collection::vec(coefficient(), basis.len())
        .prop_map(move |cs| HomogeneousPoly::from_terms(nvars, degree, basis.iter().cloned().zip(cs)).unwrap())
}

pub fn nonzero_form(nvars: usize, degree: u32) -> impl Strategy<Value = HomogeneousPoly> {
    form(nvars, degree).prop_filter("nonzero", |f| !f.is_zero())
}

pub fn unipoly(max_degree: usize) -> impl Strategy<Value = UniPoly> {
    proptest::collection::vec((-3i64..=3, -1i64..=1), 1..=max_degree + 1)
        .prop_map(|cs| UniPoly::new(cs.into_iter().map(|(a, b)| gauss(a, b)).collect()))
}

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

/// Half-integer Gaussian grid points, at least 1/2 apart.
pub fn grid_root(a: i64, b: i64) -> ComplexRational {
    ComplexRational::new(
        BigRational::new(BigInt::from(a), BigInt::from(2)),
        BigRational::new(BigInt::from(b), BigInt::from(2)),
    )
}

/// `∏ (z − a_k)^{m_k}` with distinct roots and total degree at most
/// `max_degree`, returned with its roots.
pub fn factored(roots: &[(i64, i64, u32)], max_degree: u32) -> (UniPoly, Vec<(ComplexRational, u32)>) {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut degree = 0;
    for &(a, b, m) in roots {
        if !seen.insert((a, b)) || degree + m > max_degree {
            continue;
        }
        degree += m;
        out.push((grid_root(a, b), m));
    }
    let p = out
        .iter()
        .fold(UniPoly::one(), |acc, (r, m)| acc.mul(&UniPoly::linear_root(r).pow(*m)));
    (p, out)
}

pub fn root_spec() -> impl Strategy<Value = Vec<(i64, i64, u32)>> {
    proptest::collection::vec((-4i64..=4, -4i64..=4, 1u32..=3), 1..=6)
}
