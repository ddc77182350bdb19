//! Exact Gaussian-rational coefficients.
//!
//! `Rational` is `num_rational::BigRational` (always normalized, positive
//! denominator). `ComplexRational` pairs two of them; `GaussInt` is the
//! integral-domain companion used by fraction-free elimination.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// `re + im·i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(Rational::new(BigInt::from(num), BigInt::from(den)), Rational::zero())
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Least common multiple of both denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Absolute value as a double (for norms of coefficient vectors).
    pub fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    /// True when printing requires parentheses inside a product.
    pub(crate) fn needs_parens(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

impl Default for ComplexRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ComplexRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for ComplexRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ComplexRational {
    /// Prints `a`, `b*i`, or `a+b*i`; the output parses back through the
    /// expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.im.is_one() {
            write!(f, "i")
        } else if (-self.im.clone()).is_one() {
            write!(f, "-i")
        } else {
            fmt_rational(&self.im, f)?;
            write!(f, "*i")
        }
    }
}

impl<'a> Add<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ComplexRational::real(&self.re * &rhs.re);
        }
        ComplexRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    /// Panics on division by zero; use [`ComplexRational::inv`] to check.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &ComplexRational) -> ComplexRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ComplexRational> for ComplexRational {
            type Output = ComplexRational;
            fn $m(self, rhs: ComplexRational) -> ComplexRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ComplexRational> for ComplexRational {
            type Output = ComplexRational;
            fn $m(self, rhs: &ComplexRational) -> ComplexRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(-self.re, -self.im)
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&ComplexRational> for ComplexRational {
    fn add_assign(&mut self, rhs: &ComplexRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ComplexRational> for ComplexRational {
    fn sub_assign(&mut self, rhs: &ComplexRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ComplexRational> for ComplexRational {
    fn mul_assign(&mut self, rhs: &ComplexRational) {
        *self = &*self * rhs;
    }
}

/// Gaussian integer `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn zero() -> Self {
        Self {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    pub fn one() -> Self {
        Self {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Scales `value` by the integer `scale` and returns the product when it
    /// is integral.
    pub fn from_scaled(value: &ComplexRational, scale: &BigInt) -> Option<Self> {
        let re = &value.re * Rational::from_integer(scale.clone());
        let im = &value.im * Rational::from_integer(scale.clone());
        if re.is_integer() && im.is_integer() {
            Some(Self {
                re: re.to_integer(),
                im: im.to_integer(),
            })
        } else {
            None
        }
    }

    pub fn mul(&self, rhs: &GaussInt) -> GaussInt {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussInt {
                re: &self.re * &rhs.re,
                im: BigInt::zero(),
            };
        }
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    pub fn sub(&self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    /// Exact quotient; `None` when `rhs` does not divide `self`.
    pub fn exact_div(&self, rhs: &GaussInt) -> Option<GaussInt> {
        if rhs.im.is_zero() {
            let (qr, rr) = self.re.div_rem(&rhs.re);
            let (qi, ri) = self.im.div_rem(&rhs.re);
            return (rr.is_zero() && ri.is_zero()).then_some(GaussInt { re: qr, im: qi });
        }
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let num_re = &self.re * &rhs.re + &self.im * &rhs.im;
        let num_im = &self.im * &rhs.re - &self.re * &rhs.im;
        let (qr, rr) = num_re.div_rem(&norm);
        let (qi, ri) = num_im.div_rem(&norm);
        (rr.is_zero() && ri.is_zero()).then_some(GaussInt { re: qr, im: qi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let a = ComplexRational::new(Rational::from_integer(1.into()), Rational::new(2.into(), 3.into()));
        let b = ComplexRational::from_ratio(-5, 7);
        let prod = &a * &b;
        assert_eq!(&prod / &b, a);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert!(ComplexRational::zero().inv().is_none());
        assert_eq!(ComplexRational::i().pow(2), ComplexRational::from_integer(-1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(ComplexRational::from_ratio(1, 2).to_string(), "1/2");
        assert_eq!(ComplexRational::i().to_string(), "i");
        let z = ComplexRational::from_integer(3) - ComplexRational::from_ratio(3, 4) * ComplexRational::i();
        assert_eq!(z.to_string(), "3-3/4*i");
    }

    #[test]
    fn gaussian_exact_division() {
        let a = GaussInt {
            re: 3.into(),
            im: 4.into(),
        };
        let b = GaussInt {
            re: 1.into(),
            im: 2.into(),
        };
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&b), Some(a.clone()));
        assert_eq!(
            a.exact_div(&GaussInt {
                re: 2.into(),
                im: 0.into()
            }),
            None
        );
    }
}
