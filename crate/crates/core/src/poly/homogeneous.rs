use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::monomial::{Monomial, MonomialIndex};
use super::rational::ComplexRational;
use super::PolyError;

/// Homogeneous form of fixed degree in `nvars` variables with exact
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, ComplexRational>,
}

impl HomogeneousPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Self {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Monomial, coeff: ComplexRational) -> Self {
        let mut p = Self::zero(m.nvars(), m.degree());
        if !coeff.is_zero() {
            p.terms.insert(m, coeff);
        }
        p
    }

    /// The coordinate form `x_k`.
    pub fn variable(nvars: usize, k: usize) -> Self {
        Self::monomial(Monomial::variable(nvars, k), ComplexRational::one())
    }

    /// Builds a form from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, ComplexRational)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(nvars, degree);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(PolyError::ArityMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            if m.degree() != degree {
                return Err(PolyError::DegreeMismatch {
                    left: degree,
                    right: m.degree(),
                });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: &ComplexRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> ComplexRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly, PolyError> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly, PolyError> {
        self.add(&other.scale(&ComplexRational::from_integer(-1)))
    }

    fn check_same_space(&self, other: &HomogeneousPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut acc: BTreeMap<Monomial, ComplexRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert_with(ComplexRational::zero);
                *e += &(ca * cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(HomogeneousPoly {
            nvars: self.nvars,
            degree: self.degree + other.degree,
            terms: acc,
        })
    }

    /// Product with a single monomial (a shift of every exponent vector).
    pub fn mul_monomial(&self, m: &Monomial) -> HomogeneousPoly {
        HomogeneousPoly {
            nvars: self.nvars,
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &ComplexRational) -> HomogeneousPoly {
        if c.is_zero() {
            return HomogeneousPoly::zero(self.nvars, self.degree);
        }
        HomogeneousPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> HomogeneousPoly {
        let mut acc = HomogeneousPoly::monomial(Monomial::one(self.nvars), ComplexRational::one());
        for _ in 0..k {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    /// Coordinates with respect to `index` (which must describe this
    /// form's degree and arity).
    pub fn coefficient_vector(&self, index: &MonomialIndex) -> Vec<ComplexRational> {
        assert_eq!(index.degree(), self.degree, "coordinate degree mismatch");
        assert_eq!(index.nvars(), self.nvars, "coordinate arity mismatch");
        let mut v = vec![ComplexRational::zero(); index.len()];
        for (m, c) in &self.terms {
            let pos = index.position(m).expect("monomial of matching degree");
            v[pos] = c.clone();
        }
        v
    }

    pub fn from_coefficient_vector(index: &MonomialIndex, v: &[ComplexRational]) -> HomogeneousPoly {
        let mut p = HomogeneousPoly::zero(index.nvars(), index.degree());
        for (m, c) in index.monomials().iter().zip(v) {
            if !c.is_zero() {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_c64();
                for (x, &e) in point.iter().zip(m.exponents()) {
                    if e > 0 {
                        t *= x.powu(e);
                    }
                }
                t
            })
            .sum()
    }

    pub fn eval_exact(&self, point: &[ComplexRational]) -> ComplexRational {
        let mut acc = ComplexRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Largest coefficient modulus (the `‖L‖` of a linear form).
    pub fn max_coefficient_modulus(&self) -> f64 {
        self.terms.values().map(|c| c.modulus()).fold(0.0, f64::max)
    }
}

/// Writes `c·body` in the shared term syntax: `body`, `-body`, `2*body`,
/// `(1+i)*body`, or just the coefficient when `body` is empty.
pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, coeff: &ComplexRational, body: &str, first: bool) -> fmt::Result {
    let neg_real = coeff.is_real() && coeff.re < num_rational::BigRational::from_integer(0.into());
    let shown = if neg_real { -coeff } else { coeff.clone() };
    if first {
        if neg_real {
            write!(f, "-")?;
        }
    } else if neg_real {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if body.is_empty() {
        if shown.needs_parens() {
            return write!(f, "({shown})");
        }
        return write!(f, "{shown}");
    }
    if shown.is_one() {
        write!(f, "{body}")
    } else if shown.needs_parens() || !shown.is_real() {
        write!(f, "({shown})*{body}")
    } else {
        write!(f, "{shown}*{body}")
    }
}

impl fmt::Display for HomogeneousPoly {
    /// Leading term first; the output parses back to an equal form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let body = if m.degree() == 0 { String::new() } else { m.to_string() };
            write_term(f, c, &body, k == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, k: usize) -> HomogeneousPoly {
        HomogeneousPoly::variable(n, k)
    }

    #[test]
    fn products_and_sums() {
        let p = x(2, 0).mul(&x(2, 1)).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.to_string(), "x0*x1");
        let q = x(3, 1).pow(2).mul(&x(3, 2).pow(2)).unwrap();
        assert_eq!(q.to_string(), "x1^2*x2^2");
        assert_eq!(q.degree(), 4);
        let s = x(2, 0)
            .add(&x(2, 1))
            .unwrap()
            .add(&x(2, 0).sub(&x(2, 1)).unwrap())
            .unwrap();
        assert_eq!(s.to_string(), "2*x0");
    }

    #[test]
    fn add_rejects_degree_mismatch() {
        let err = x(2, 0).add(&x(2, 1).pow(2)).unwrap_err();
        assert!(matches!(err, PolyError::DegreeMismatch { .. }));
    }

    #[test]
    fn cancellation_removes_terms() {
        let z = x(2, 0).sub(&x(2, 0)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn coefficient_roundtrip() {
        let p = x(3, 0).pow(2).add(&x(3, 1).mul(&x(3, 2)).unwrap()).unwrap();
        let idx = MonomialIndex::new(3, 2);
        let v = p.coefficient_vector(&idx);
        assert_eq!(HomogeneousPoly::from_coefficient_vector(&idx, &v), p);
    }
}
