//! Exp-polynomial expressions `Σ c_p(z)·exp(p(z))`.
//!
//! Expressions are kept in a flattened normal form: a map from the exponent
//! polynomial `p` to its polynomial coefficient `c_p`. Distinct exponents
//! give linearly independent functions over `C[z]`, so this form is
//! canonical and an expression is identically zero exactly when the map is
//! empty. The class is closed under `+`, `×`, nonnegative powers and `d/dz`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::rational::ComplexRational;
use super::univariate::{horner, UniPoly};
use super::PolyError;

pub const ORDER_SEARCH_CAP: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AnalyticExpr {
    terms: BTreeMap<UniPoly, UniPoly>,
}

impl AnalyticExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ComplexRational) -> Self {
        Self::polynomial(UniPoly::constant(c))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(ComplexRational::from_integer(n))
    }

    /// The identity function `z`.
    pub fn z() -> Self {
        Self::polynomial(UniPoly::z())
    }

    pub fn polynomial(p: UniPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(UniPoly::zero(), p);
        }
        Self { terms }
    }

    /// `coeff(z) · exp(exponent(z))`.
    pub fn exp_term(coeff: UniPoly, exponent: UniPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        Self { terms }
    }

    /// `exp(arg)`; the argument must itself be a polynomial in `z`.
    pub fn exp(arg: &AnalyticExpr) -> Result<Self, PolyError> {
        let p = arg.as_polynomial().ok_or(PolyError::NonPolynomialExponent)?;
        Ok(Self::exp_term(UniPoly::one(), p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no transcendental factor is present.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|p| p.is_zero())
    }

    pub fn as_polynomial(&self) -> Option<UniPoly> {
        match self.terms.len() {
            0 => Some(UniPoly::zero()),
            1 => self.terms.get(&UniPoly::zero()).cloned(),
            _ => None,
        }
    }

    /// Exact degree for purely polynomial expressions.
    pub fn polynomial_degree(&self) -> Option<usize> {
        self.as_polynomial().and_then(|p| p.degree())
    }

    pub fn as_constant(&self) -> Option<ComplexRational> {
        let p = self.as_polynomial()?;
        match p.degree() {
            None => Some(ComplexRational::zero()),
            Some(0) => Some(p.coeff(0)),
            _ => None,
        }
    }

    /// `(exponent, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&UniPoly, &UniPoly)> {
        self.terms.iter()
    }

    fn insert_add(terms: &mut BTreeMap<UniPoly, UniPoly>, exponent: UniPoly, coeff: UniPoly) {
        if coeff.is_zero() {
            return;
        }
        let sum = match terms.remove(&exponent) {
            Some(c) => c.add(&coeff),
            None => coeff,
        };
        if !sum.is_zero() {
            terms.insert(exponent, sum);
        }
    }

    pub fn add(&self, other: &AnalyticExpr) -> AnalyticExpr {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut terms, e.clone(), c.clone());
        }
        AnalyticExpr { terms }
    }

    pub fn neg(&self) -> AnalyticExpr {
        AnalyticExpr {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &AnalyticExpr) -> AnalyticExpr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &AnalyticExpr) -> AnalyticExpr {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                Self::insert_add(&mut terms, ea.add(eb), ca.mul(cb));
            }
        }
        AnalyticExpr { terms }
    }

    pub fn scale(&self, c: &ComplexRational) -> AnalyticExpr {
        if c.is_zero() {
            return AnalyticExpr::zero();
        }
        AnalyticExpr {
            terms: self.terms.iter().map(|(e, p)| (e.clone(), p.scale(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> AnalyticExpr {
        let mut acc = AnalyticExpr::from_integer(1);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `d/dz`, using `(c·e^p)' = (c' + c·p')·e^p`.
    pub fn derivative(&self) -> AnalyticExpr {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = c.derivative().add(&c.mul(&e.derivative()));
            Self::insert_add(&mut terms, e.clone(), d);
        }
        AnalyticExpr { terms }
    }

    pub fn nth_derivative(&self, k: usize) -> AnalyticExpr {
        (0..k).fold(self.clone(), |g, _| g.derivative())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let v = c.eval_c64(z);
                if e.is_zero() {
                    v
                } else {
                    v * e.eval_c64(z).exp()
                }
            })
            .sum()
    }

    /// Exact value at `z = 0` when every exponent vanishes there.
    pub fn exact_value_at_zero(&self) -> Option<ComplexRational> {
        let mut acc = ComplexRational::zero();
        for (e, c) in &self.terms {
            if !e.coeff(0).is_zero() {
                return None;
            }
            acc += &c.coeff(0);
        }
        Some(acc)
    }

    /// Exact vanishing order at the origin, when decidable without
    /// transcendental constants and found within [`ORDER_SEARCH_CAP`]
    /// derivatives.
    pub fn exact_order_at_zero(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        if let Some(p) = self.as_polynomial() {
            return p.order_at_zero();
        }
        let mut g = self.clone();
        for k in 0..=ORDER_SEARCH_CAP {
            match g.exact_value_at_zero() {
                None => return None,
                Some(v) if !v.is_zero() => return Some(k),
                Some(_) => g = g.derivative(),
            }
        }
        None
    }

    pub fn compile(&self) -> CompiledExpr {
        CompiledExpr {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (c.to_c64(), (!e.is_zero()).then(|| e.to_c64())))
                .collect(),
        }
    }
}

/// Double-precision evaluator for an [`AnalyticExpr`].
#[derive(Clone, Debug)]
pub struct CompiledExpr {
    terms: Vec<(Vec<Complex64>, Option<Vec<Complex64>>)>,
}

impl CompiledExpr {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            let v = horner(c, z);
            acc += match e {
                None => v,
                Some(e) => v * horner(e, z).exp(),
            };
        }
        acc
    }
}

impl fmt::Display for AnalyticExpr {
    /// `1 + z + exp(z)`, `(z^2 + 2*z)*exp(z)`; reparses to an equal value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{c}")?;
            } else if c == &UniPoly::one() {
                write!(f, "exp({e})")?;
            } else {
                write!(f, "({c})*exp({e})")?;
            }
        }
        Ok(())
    }
}
