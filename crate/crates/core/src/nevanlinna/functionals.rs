use num_complex::Complex64;
use rayon::prelude::*;

use super::quadrature::CircleQuadrature;
use super::zeros::{locate_zeros, safe_radius, ZeroSet};
use super::NevanlinnaError;
use crate::poly::{curve_compose, AnalyticExpr, CompiledCurve, Curve, HomogeneousPoly};

/// Multiplicity cap for counting functions; `Infinite` gives the plain
/// (untruncated) functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Truncation {
    Finite(u64),
    Infinite,
}

impl Truncation {
    pub fn cap(self, m: u64) -> u64 {
        match self {
            Truncation::Finite(k) => m.min(k),
            Truncation::Infinite => m,
        }
    }
}

fn check_radius(r: f64) -> Result<(), NevanlinnaError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(NevanlinnaError::InvalidRadius(r))
    }
}

fn on_circle(r: f64, t: f64) -> Complex64 {
    Complex64::from_polar(r, t)
}

/// `T_f(r) = (1/2π)∫ log max_k |f_k(re^{iθ})| dθ`.
pub fn characteristic(f: &Curve, r: f64, quad: &CircleQuadrature) -> Result<f64, NevanlinnaError> {
    check_radius(r)?;
    let c = f.compile();
    Ok(quad.mean(|t| c.norm(on_circle(r, t)).ln())?.value)
}

/// The composition `Q∘f` together with its zeros out to (slightly past) `R`.
#[derive(Clone, Debug)]
pub struct TargetZeros {
    pub zeros: ZeroSet,
    /// Exact vanishing order of `Q∘f` at the origin, when decidable.
    pub origin_order: Option<u32>,
}

impl TargetZeros {
    pub fn locate(f: &Curve, q: &HomogeneousPoly, radius: f64, tol: f64) -> Result<Self, NevanlinnaError> {
        Self::of_expr(&curve_compose(q, f)?, radius, tol)
    }

    /// Zeros of an arbitrary exp-polynomial `g`.
    pub fn of_expr(g: &AnalyticExpr, radius: f64, tol: f64) -> Result<Self, NevanlinnaError> {
        if g.is_zero() {
            return Err(NevanlinnaError::IdenticallyZero);
        }
        let zeros = locate_zeros(g, radius, tol)?;
        Ok(Self {
            origin_order: g.exact_order_at_zero(),
            zeros,
        })
    }

    fn origin_multiplicity(&self) -> u64 {
        match self.origin_order {
            Some(m) => m as u64,
            None => self
                .zeros
                .zeros
                .iter()
                .filter(|z| z.location.norm() == 0.0)
                .map(|z| z.multiplicity as u64)
                .sum(),
        }
    }

    fn nonzero(&self, r: f64) -> impl Iterator<Item = (f64, u64)> + '_ {
        self.zeros
            .within(r)
            .filter(|z| z.location.norm() > 0.0)
            .map(|z| (z.location.norm(), z.multiplicity as u64))
    }

    /// `n^M(r)`: zeros in `|z| ≤ r` with multiplicities capped at `M`.
    pub fn count(&self, r: f64, m: Truncation) -> u64 {
        m.cap(self.origin_multiplicity()) + self.nonzero(r).map(|(_, k)| m.cap(k)).sum::<u64>()
    }

    /// `N^M(r) = Σ_{0<|z|≤r} min(k, M) log(r/|z|) + min(m_0, M) log r`.
    pub fn counting(&self, r: f64, m: Truncation) -> f64 {
        let origin = m.cap(self.origin_multiplicity()) as f64 * r.ln();
        origin
            + self
                .nonzero(r)
                .map(|(a, k)| m.cap(k) as f64 * (r / a).ln())
                .sum::<f64>()
    }

    /// Error when some zero modulus lies within `1e−9·r` of `r`.
    pub fn check_circle(&self, r: f64) -> Result<(), NevanlinnaError> {
        let safe = self.zeros.safe_radius(r);
        if safe != r {
            return Err(NevanlinnaError::RadiusOnZero { r, suggested: safe });
        }
        Ok(())
    }
}

fn proximity_integral(
    c: &CompiledCurve,
    q: &HomogeneousPoly,
    r: f64,
    quad: &CircleQuadrature,
) -> Result<f64, NevanlinnaError> {
    let d = q.degree() as f64;
    let mean = quad.mean(|t| {
        let z = on_circle(r, t);
        let mut vals = Vec::with_capacity(q.nvars());
        c.eval_into(z, &mut vals);
        let norm = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        d * norm.ln() - q.eval_c64(&vals).norm().ln()
    })?;
    Ok(mean.value)
}

/// `m_f(r, Q) = (1/2π)∫ log(‖f‖^d / |Q∘f|) dθ`.
pub fn proximity(f: &Curve, q: &HomogeneousPoly, r: f64, quad: &CircleQuadrature) -> Result<f64, NevanlinnaError> {
    check_radius(r)?;
    let tz = TargetZeros::locate(f, q, r * 1.01, 1e-10)?;
    tz.check_circle(r)?;
    proximity_integral(&f.compile(), q, r, quad)
}

/// `N_f(r, Q)` or `N_f^M(r, Q)`.
pub fn counting(f: &Curve, q: &HomogeneousPoly, r: f64, truncation: Truncation) -> Result<f64, NevanlinnaError> {
    check_radius(r)?;
    let tz = TargetZeros::locate(f, q, r, 1e-10)?;
    Ok(tz.counting(r, truncation))
}

/// Values of the First Main Theorem identity at one radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FmtPoint {
    pub requested_r: f64,
    pub r: f64,
    pub proximity: f64,
    pub counting: f64,
    pub characteristic: f64,
    /// `m_f + N_f − d·T_f`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FmtResidual {
    pub points: Vec<FmtPoint>,
    /// `max − min` of the residual over the grid.
    pub spread: f64,
}

/// `m_f(r,Q) + N_f(r,Q) − d·T_f(r)` over a grid of radii. A radius that
/// meets a zero modulus is nudged outward and the nudge recorded.
pub fn fmt_residual(
    f: &Curve,
    q: &HomogeneousPoly,
    r_grid: &[f64],
    quad: &CircleQuadrature,
) -> Result<FmtResidual, NevanlinnaError> {
    if r_grid.len() < 2 {
        return Err(NevanlinnaError::GridTooSmall(r_grid.len()));
    }
    for &r in r_grid {
        check_radius(r)?;
    }
    let r_max = r_grid.iter().cloned().fold(0.0, f64::max);
    let tz = TargetZeros::locate(f, q, r_max * 1.01, 1e-10)?;
    let c = f.compile();
    let d = q.degree() as f64;
    let points = r_grid
        .par_iter()
        .map(|&r0| {
            let r = tz.zeros.safe_radius(r0);
            let m = proximity_integral(&c, q, r, quad)?;
            let t = quad.mean(|th| c.norm(on_circle(r, th)).ln())?.value;
            let n = tz.counting(r, Truncation::Infinite);
            Ok(FmtPoint {
                requested_r: r0,
                r,
                proximity: m,
                counting: n,
                characteristic: t,
                residual: m + n - d * t,
            })
        })
        .collect::<Result<Vec<_>, NevanlinnaError>>()?;
    let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        (lo.min(p.residual), hi.max(p.residual))
    });
    Ok(FmtResidual {
        points,
        spread: hi - lo,
    })
}

/// The Nevanlinna functionals of a curve against several targets at a
/// single radius.
#[derive(Clone, Debug, PartialEq)]
pub struct NevanlinnaRow {
    pub r: f64,
    pub perturbed: bool,
    pub characteristic: f64,
    pub proximity: Vec<f64>,
    pub count: Vec<u64>,
    pub count_truncated: Vec<u64>,
    pub counting: Vec<f64>,
    pub counting_truncated: Vec<f64>,
}

/// One [`NevanlinnaRow`] per radius, computed concurrently and returned in
/// grid order.
pub fn nevanlinna_rows(
    f: &Curve,
    targets: &[HomogeneousPoly],
    r_grid: &[f64],
    truncation: Truncation,
    quad: &CircleQuadrature,
) -> Result<Vec<NevanlinnaRow>, NevanlinnaError> {
    for &r in r_grid {
        check_radius(r)?;
    }
    let r_max = r_grid.iter().cloned().fold(0.0, f64::max);
    let zeros: Vec<TargetZeros> = targets
        .par_iter()
        .map(|q| TargetZeros::locate(f, q, r_max * 1.01, 1e-10))
        .collect::<Result<_, _>>()?;
    let c = f.compile();
    r_grid
        .par_iter()
        .map(|&r0| {
            let r = safe_radius(
                r0,
                zeros
                    .iter()
                    .flat_map(|z| z.zeros.zeros.iter().map(|w| w.location.norm())),
            );
            let characteristic = quad.mean(|th| c.norm(on_circle(r, th)).ln())?.value;
            let proximity = targets
                .iter()
                .map(|q| proximity_integral(&c, q, r, quad))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(NevanlinnaRow {
                r,
                perturbed: r != r0,
                characteristic,
                proximity,
                count: zeros.iter().map(|z| z.count(r, Truncation::Infinite)).collect(),
                count_truncated: zeros.iter().map(|z| z.count(r, truncation)).collect(),
                counting: zeros.iter().map(|z| z.counting(r, Truncation::Infinite)).collect(),
                counting_truncated: zeros.iter().map(|z| z.counting(r, truncation)).collect(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_expr, parse_form};

    fn curve(parts: &[&str]) -> Curve {
        Curve::new(parts.iter().map(|s| parse_expr(s).unwrap()).collect()).unwrap()
    }

    fn form(s: &str, n: usize) -> HomogeneousPoly {
        parse_form(s, n).unwrap()
    }

    #[test]
    fn characteristic_examples() {
        let q = CircleQuadrature::default();
        let line = curve(&["z", "1"]);
        let e = std::f64::consts::E;
        assert!((characteristic(&line, e, &q).unwrap() - 1.0).abs() < 1e-4);
        assert!(characteristic(&line, 0.5, &q).unwrap().abs() < 1e-4);
        // log‖f‖ = max(log r, r cos θ) for r ≥ 1
        let r: f64 = 50.0;
        let t0 = (r.ln() / r).acos();
        let exact = (r * t0.sin() + (std::f64::consts::PI - t0) * r.ln()) / std::f64::consts::PI;
        let t = characteristic(&curve(&["1", "z", "exp(z)"]), r, &q).unwrap();
        assert!((t - exact).abs() < 1e-4, "{t} vs {exact}");
    }

    #[test]
    fn proximity_examples() {
        let q = CircleQuadrature::default();
        let line = curve(&["z", "1"]);
        assert!(proximity(&line, &form("x0", 2), 3.0, &q).unwrap().abs() < 1e-4);
        assert!((proximity(&line, &form("x1", 2), 3.0, &q).unwrap() - 3f64.ln()).abs() < 1e-4);
        let conic = curve(&["1", "z", "z^2"]);
        assert!(matches!(
            proximity(&conic, &form("x0*x2 - x1^2", 3), 2.0, &q),
            Err(NevanlinnaError::IdenticallyZero)
        ));
        assert!(matches!(
            proximity(&line, &form("x0 - x1", 2), 1.0, &q),
            Err(NevanlinnaError::RadiusOnZero { .. })
        ));
    }

    #[test]
    fn counting_examples() {
        let e = std::f64::consts::E;
        let line = curve(&["z", "1"]);
        assert!((counting(&line, &form("x0", 2), e, Truncation::Infinite).unwrap() - 1.0).abs() < 1e-12);
        let fifth = curve(&["(z-1)^5", "1"]);
        let n = counting(&fifth, &form("x0", 2), e * e, Truncation::Finite(2)).unwrap();
        assert!((n - 4.0).abs() < 1e-9);
        let plain = counting(&fifth, &form("x0", 2), e * e, Truncation::Infinite).unwrap();
        assert!((plain - 10.0).abs() < 1e-9);
        assert!(matches!(
            counting(&line, &form("x0", 2), 0.0, Truncation::Infinite),
            Err(NevanlinnaError::InvalidRadius(_))
        ));
    }

    #[test]
    fn fmt_examples() {
        let q = CircleQuadrature::default();
        let line = curve(&["z", "1"]);
        for s in ["x0", "x1", "x0 - x1"] {
            let res = fmt_residual(&line, &form(s, 2), &[2.0, 4.0, 8.0, 16.0], &q).unwrap();
            assert!(res.spread <= 1e-3, "{s}: {}", res.spread);
        }
    }

    #[test]
    fn fmt_transcendental() {
        let q = CircleQuadrature::default();
        let f = curve(&["1", "z", "exp(z)"]);
        let res = fmt_residual(&f, &form("x0 + x1 + x2", 3), &[4.0, 8.0, 12.0], &q).unwrap();
        assert!(res.spread <= 0.05, "{res:?}");
    }
}
