use num_complex::Complex64;

use super::expr::{AnalyticExpr, CompiledExpr};
use super::homogeneous::HomogeneousPoly;
use super::univariate::UniPoly;
use super::PolyError;

/// A holomorphic curve `C → P^n` given by a reduced representation
/// `(f_0 : … : f_n)` of exp-polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    components: Vec<AnalyticExpr>,
}

impl Curve {
    /// Validates the components: at least two, not all zero, and for purely
    /// polynomial curves no common polynomial zero.
    pub fn new(components: Vec<AnalyticExpr>) -> Result<Self, PolyError> {
        if components.len() < 2 {
            return Err(PolyError::TooFewComponents(components.len()));
        }
        if components.iter().all(|c| c.is_zero()) {
            return Err(PolyError::ZeroCurve);
        }
        if components.iter().all(|c| c.is_polynomial()) {
            let g = components
                .iter()
                .filter_map(|c| c.as_polynomial())
                .fold(UniPoly::zero(), |acc, p| acc.gcd(&p));
            if !g.is_constant() {
                return Err(PolyError::NotReduced(g.to_string()));
            }
        }
        Ok(Self { components })
    }

    /// Dimension `n` of the target projective space.
    pub fn n(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[AnalyticExpr] {
        &self.components
    }

    pub fn is_polynomial(&self) -> bool {
        self.components.iter().all(|c| c.is_polynomial())
    }

    pub fn compile(&self) -> CompiledCurve {
        CompiledCurve {
            components: self.components.iter().map(|c| c.compile()).collect(),
        }
    }
}

/// Fast evaluator for the components of a [`Curve`].
#[derive(Clone, Debug)]
pub struct CompiledCurve {
    components: Vec<CompiledExpr>,
}

impl CompiledCurve {
    pub fn eval_into(&self, z: Complex64, out: &mut Vec<Complex64>) {
        out.clear();
        out.extend(self.components.iter().map(|c| c.eval(z)));
    }

    /// `‖f(z)‖ = max_k |f_k(z)|`.
    pub fn norm(&self, z: Complex64) -> f64 {
        self.components.iter().map(|c| c.eval(z).norm()).fold(0.0, f64::max)
    }
}

/// `Q(f_0(z), …, f_n(z))` as an exp-polynomial.
pub fn curve_compose(q: &HomogeneousPoly, f: &Curve) -> Result<AnalyticExpr, PolyError> {
    if q.nvars() != f.components.len() {
        return Err(PolyError::ArityMismatch {
            expected: f.components.len(),
            found: q.nvars(),
        });
    }
    let mut powers: Vec<Vec<AnalyticExpr>> = f
        .components
        .iter()
        .map(|c| vec![AnalyticExpr::from_integer(1), c.clone()])
        .collect();
    let mut acc = AnalyticExpr::zero();
    for (m, coeff) in q.terms() {
        let mut t = AnalyticExpr::constant(coeff.clone());
        for (k, &e) in m.exponents().iter().enumerate() {
            let cache = &mut powers[k];
            while cache.len() <= e as usize {
                let next = cache.last().unwrap().mul(&cache[1]);
                cache.push(next);
            }
            if e > 0 {
                t = t.mul(&cache[e as usize]);
            }
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}
