use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::levels::Filtration;
use super::FiltrationError;
use crate::poly::HomogeneousPoly;

/// Largest `M_exact` for which [`truncation_report`] builds the filtration
/// to get the exact `Δ`.
pub const EXACT_DELTA_CAP: u64 = 1500;

fn q(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ceil_to_int(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

fn check_epsilon(epsilon: &BigRational) -> Result<(), FiltrationError> {
    if epsilon <= &BigRational::zero() || epsilon >= &BigRational::one() {
        return Err(FiltrationError::EpsilonOutOfRange);
    }
    Ok(())
}

fn rational_pow(x: &BigRational, k: u64) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

/// `α = d⌈2(n+1)(nd+n)(2^n−1)/ε⌉ + 3nd`.
pub fn choose_alpha(n: u64, d: u64, epsilon: &BigRational) -> Result<u32, FiltrationError> {
    check_epsilon(epsilon)?;
    let two_n = BigInt::one() << n;
    let k = q(2 * (n + 1) * (n * d + n)) * BigRational::from_integer(two_n - 1) / epsilon;
    let alpha = BigInt::from(d) * ceil_to_int(&k) + BigInt::from(3 * n * d);
    alpha.to_u32().ok_or(FiltrationError::AlphaOverflow)
}

/// `C(α+n, n) = dim V_α`.
pub fn m_exact(n: u64, alpha: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 1..=n {
        acc = acc * BigUint::from(alpha + k) / BigUint::from(k);
    }
    acc
}

/// `2d⌈2^n(n+1)n(d+1)/ε⌉^n`.
pub fn m_paper(n: u64, d: u64, epsilon: &BigRational) -> Result<BigUint, FiltrationError> {
    check_epsilon(epsilon)?;
    let two_n = BigInt::one() << n;
    let inner = ceil_to_int(&(BigRational::from_integer(two_n * BigInt::from((n + 1) * n * (d + 1))) / epsilon));
    let inner = inner.to_biguint().expect("positive");
    Ok(BigUint::from(2 * d) * num_traits::pow(inner, n as usize))
}

/// `α(α−d)⋯(α−nd) / (d·(n+1)!)`.
pub fn delta_lower_bound(n: u64, d: u64, alpha: u64) -> BigRational {
    let num = (0..=n).fold(BigInt::one(), |acc, k| {
        acc * (BigInt::from(alpha) - BigInt::from(k * d))
    });
    let fact = (1..=n + 1).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    BigRational::new(num, fact * BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    pub n: u64,
    pub d: u64,
    pub epsilon: BigRational,
    pub alpha: u32,
    pub m_exact: BigUint,
    pub m_paper: BigUint,
    pub delta_lower: BigRational,
    /// Exact `Δ` for the supplied forms at the chosen `α`.
    pub delta: Option<u64>,
    /// `M_exact · α / Δ`.
    pub ratio: Option<BigRational>,
    pub paper_bound_exceeded: bool,
    /// Forms were supplied but `M_exact` exceeded [`EXACT_DELTA_CAP`].
    pub delta_skipped: bool,
}

pub fn truncation_report(
    n: u64,
    d: u64,
    epsilon: &BigRational,
    gammas: Option<&[HomogeneousPoly]>,
) -> Result<TruncationReport, FiltrationError> {
    let alpha = choose_alpha(n, d, epsilon)?;
    let m_exact = m_exact(n, alpha as u64);
    let m_paper = m_paper(n, d, epsilon)?;
    let mut delta = None;
    let mut ratio = None;
    let mut delta_skipped = false;
    if let Some(gs) = gammas {
        if gs.iter().any(|g| g.degree() as u64 != d) {
            return Err(FiltrationError::MixedDegree);
        }
        if m_exact <= BigUint::from(EXACT_DELTA_CAP) {
            let dl = Filtration::build(gs, alpha)?.big_delta()?;
            let m = BigRational::from_integer(BigInt::from(m_exact.clone()));
            ratio = Some(m * q(alpha as u64) / q(dl));
            delta = Some(dl);
        } else {
            delta_skipped = true;
        }
    }
    Ok(TruncationReport {
        n,
        d,
        epsilon: epsilon.clone(),
        alpha,
        paper_bound_exceeded: m_exact > m_paper,
        m_exact,
        m_paper,
        delta_lower: delta_lower_bound(n, d, alpha as u64),
        delta,
        ratio,
        delta_skipped,
    })
}

/// Both sides of each step in the estimate of `qd − Mα/Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioBoundReport {
    /// `Mα/Δ`.
    pub ratio: BigRational,
    /// `d(n+1)((α+n)/(α−nd))^n`.
    pub ratio_bound: BigRational,
    pub ratio_holds: bool,
    /// `((α+n)/(α−nd))^n`.
    pub growth: BigRational,
    /// `1 + ε/(2d(n+1))`.
    pub growth_bound: BigRational,
    pub growth_holds: bool,
    /// `qd − Mα/Δ`.
    pub coefficient: BigRational,
    /// `d(q − n − 1 − ε/2)`.
    pub coefficient_bound: BigRational,
    pub coefficient_holds: bool,
    /// `α` equals [`choose_alpha`]`(n, d, ε)`; the growth and coefficient
    /// inequalities are only expected to hold in that case.
    pub default_alpha: bool,
}

pub fn ratio_bound_check(
    n: u64,
    d: u64,
    alpha: u64,
    delta: &BigRational,
    m: &BigUint,
    q_targets: u64,
    epsilon: &BigRational,
) -> Result<RatioBoundReport, FiltrationError> {
    if alpha <= n * d {
        return Err(FiltrationError::AlphaTooSmall { alpha, nd: n * d });
    }
    check_epsilon(epsilon)?;
    let m = BigRational::from_integer(BigInt::from(m.clone()));
    let ratio = m * q(alpha) / delta;
    let growth = rational_pow(
        &BigRational::new(BigInt::from(alpha + n), BigInt::from(alpha - n * d)),
        n,
    );
    let ratio_bound = q(d * (n + 1)) * &growth;
    let growth_bound = BigRational::one() + epsilon / q(2 * d * (n + 1));
    let coefficient = q(q_targets * d) - &ratio;
    let half_eps = epsilon / q(2);
    let coefficient_bound =
        q(d) * (BigRational::from_integer(BigInt::from(q_targets) - BigInt::from(n + 1)) - half_eps);
    let default_alpha = choose_alpha(n, d, epsilon).map(|a| a as u64 == alpha).unwrap_or(false);
    Ok(RatioBoundReport {
        ratio_holds: ratio <= ratio_bound,
        growth_holds: growth <= growth_bound,
        coefficient_holds: coefficient >= coefficient_bound,
        ratio,
        ratio_bound,
        growth,
        growth_bound,
        coefficient,
        coefficient_bound,
        default_alpha,
    })
}
