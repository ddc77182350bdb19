//! Dense univariate polynomials in `z` over the Gaussian rationals.

use std::fmt;

use num_complex::Complex64;

use super::homogeneous::write_term;
use super::rational::ComplexRational;

/// Coefficients in ascending degree order, trailing zeros trimmed.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<ComplexRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<ComplexRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: ComplexRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(ComplexRational::one())
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Self::new(vec![ComplexRational::zero(), ComplexRational::one()])
    }

    /// `z - a`.
    pub fn linear_root(a: &ComplexRational) -> Self {
        Self::new(vec![-a, ComplexRational::one()])
    }

    pub fn from_integers(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| ComplexRational::from_integer(c)).collect())
    }

    pub fn coeffs(&self) -> &[ComplexRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ComplexRational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> ComplexRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![ComplexRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &ComplexRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        let mut acc = UniPoly::one();
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

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &ComplexRational::from_integer(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![ComplexRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] -= &(&c * b);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's square-free decomposition: pairs `(s_k, k)` with `s_k` monic,
    /// square-free, pairwise coprime and `self = c · Π s_k^k`. Constant
    /// factors are omitted.
    pub fn square_free_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).unwrap();
        let c = df.exact_div(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            let nb = b.exact_div(&a).unwrap();
            let nc = d.exact_div(&a).unwrap();
            d = nc.sub(&nb.derivative());
            if !a.is_constant() {
                out.push((a, k));
            }
            b = nb;
            k += 1;
        }
        out
    }

    /// Multiplicity of `point` as a root (`None` for the zero polynomial).
    pub fn order_at(&self, point: &ComplexRational) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let lin = UniPoly::linear_root(point);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                return Some(k);
            }
            p = q;
            k += 1;
        }
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order_at_zero(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|k| k as u32)
    }

    pub fn eval_exact(&self, z: &ComplexRational) -> ComplexRational {
        let mut acc = ComplexRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.to_c64()).collect()
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        horner(&self.to_c64(), z)
    }

    /// Composition `self(inner(z))`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&UniPoly::constant(c.clone()));
        }
        acc
    }
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Prints in `z`, highest degree first: `z^2 + 2*z - 1/2`.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            write_term(f, c, &body, first)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_integers(cs)
    }

    #[test]
    fn division_and_gcd() {
        // (z-1)^2 (z+2)
        let a = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn yun_decomposition() {
        // z^3 (z-1)^2 (z+1)
        let f = p(&[0, 1]).pow(3).mul(&p(&[-1, 1]).pow(2)).mul(&p(&[1, 1]));
        let dec = f.square_free_decomposition();
        assert_eq!(dec, vec![(p(&[1, 1]), 1), (p(&[-1, 1]), 2), (p(&[0, 1]), 3)]);
    }

    #[test]
    fn orders() {
        let f = p(&[0, 0, 1]).mul(&p(&[-1, 1]));
        assert_eq!(f.order_at_zero(), Some(2));
        assert_eq!(f.order_at(&ComplexRational::one()), Some(1));
        assert_eq!(f.order_at(&ComplexRational::from_integer(5)), Some(0));
        assert_eq!(UniPoly::zero().order_at_zero(), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 2, 1]).to_string(), "z^2 + 2*z - 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}
