//! Zero localization with multiplicities.
//!
//! Polynomials are split exactly into square-free parts, whose (simple)
//! roots are found by Aberth iteration and polished by Newton's method.
//! General exp-polynomials are handled by recursive subdivision of a square
//! containing the disk: the zero count of each cell comes from the argument
//! principle on its boundary, and each isolated zero is refined by Newton's
//! method and certified by a winding number on a small circle.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::quadrature::{circle_winding, segment_integral};
use super::NevanlinnaError;
use crate::poly::{AnalyticExpr, CompiledExpr, UniPoly};

/// Zeros whose modulus lies within this relative distance of the radius
/// trigger a perturbation of the radius.
pub const ZERO_BAND_REL: f64 = 1e-9;
pub const RADIUS_PERTURB_REL: f64 = 1e-6;
/// Radius of the certification circle around an isolated zero.
pub const CERTIFY_RADIUS: f64 = 1e-3;
/// Largest admissible distance of a winding integral from an integer.
pub const WINDING_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroRecord {
    pub location: Complex64,
    pub multiplicity: u32,
    pub certified_radius: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    /// Zeros with `|z| ≤ radius`, sorted by modulus then argument.
    pub zeros: Vec<ZeroRecord>,
    pub requested_radius: f64,
    /// Radius actually used after any perturbation.
    pub radius: f64,
    /// Outer argument-principle count and the circle it was taken on.
    pub outer_winding: u64,
    pub winding_radius: f64,
    /// Multiplicities come from an exact square-free decomposition.
    pub exact_multiplicities: bool,
}

impl ZeroSet {
    pub fn total_multiplicity(&self) -> u64 {
        self.zeros.iter().map(|z| z.multiplicity as u64).sum()
    }

    pub fn was_perturbed(&self) -> bool {
        self.radius != self.requested_radius
    }

    /// Zeros with `|z| ≤ r`.
    pub fn within(&self, r: f64) -> impl Iterator<Item = &ZeroRecord> {
        self.zeros.iter().filter(move |z| z.location.norm() <= r)
    }

    /// Smallest `r' ≥ r` of the form `r(1 + 1e−6)^k` that keeps every zero
    /// modulus outside the band `|r' − |z|| ≤ 1e−9 r'`.
    pub fn safe_radius(&self, r: f64) -> f64 {
        safe_radius(r, self.zeros.iter().map(|z| z.location.norm()))
    }
}

pub(crate) fn safe_radius(r: f64, moduli: impl Iterator<Item = f64> + Clone) -> f64 {
    let mut r = r;
    for _ in 0..64 {
        if moduli.clone().all(|m| (m - r).abs() > ZERO_BAND_REL * r) {
            break;
        }
        r *= 1.0 + RADIUS_PERTURB_REL;
    }
    r
}

fn sort_zeros(zs: &mut [ZeroRecord]) {
    zs.sort_by(|a, b| {
        let (ma, mb) = (a.location.norm(), b.location.norm());
        ma.partial_cmp(&mb).unwrap_or(Ordering::Equal).then(
            a.location
                .arg()
                .partial_cmp(&b.location.arg())
                .unwrap_or(Ordering::Equal),
        )
    });
}

/// Zeros of `g` in `|z| ≤ R`.
pub fn locate_zeros(g: &AnalyticExpr, radius: f64, tol: f64) -> Result<ZeroSet, NevanlinnaError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(NevanlinnaError::InvalidRadius(radius));
    }
    if g.is_zero() {
        return Err(NevanlinnaError::IdenticallyZero);
    }
    let (all, exact) = match g.as_polynomial() {
        Some(p) => (polynomial_zeros(&p)?, true),
        None => (subdivision_zeros(g, radius, tol)?, false),
    };
    let r_eff = safe_radius(radius, all.iter().map(|z| z.location.norm()));
    let mut zeros: Vec<ZeroRecord> = all.iter().copied().filter(|z| z.location.norm() <= r_eff).collect();
    sort_zeros(&mut zeros);

    // choose a circle near R_eff that keeps clear of every zero modulus
    let moduli: Vec<f64> = all.iter().map(|z| z.location.norm()).collect();
    let clearance = |r: f64| moduli.iter().map(|m| (m - r).abs()).fold(f64::INFINITY, f64::min);
    let mut winding_radius = r_eff;
    if clearance(r_eff) < 1e-3 * r_eff {
        winding_radius = (0..=40)
            .map(|k| r_eff * (1.0 + 0.01 * (k as f64 - 20.0) / 20.0))
            .max_by(|a, b| clearance(*a).partial_cmp(&clearance(*b)).unwrap_or(Ordering::Equal))
            .unwrap();
    }
    let expected: u64 = all
        .iter()
        .filter(|z| z.location.norm() <= winding_radius)
        .map(|z| z.multiplicity as u64)
        .sum();
    let cg = g.compile();
    let cdg = g.derivative().compile();
    let w = circle_winding(
        |z| cg.eval(z),
        |z| cdg.eval(z),
        Complex64::new(0.0, 0.0),
        winding_radius,
        1e-6,
    )?;
    let outer = integral_winding(w)?;
    if outer != expected {
        return Err(NevanlinnaError::CountMismatch {
            located: expected,
            winding: outer,
        });
    }
    Ok(ZeroSet {
        zeros,
        requested_radius: radius,
        radius: r_eff,
        outer_winding: outer,
        winding_radius,
        exact_multiplicities: exact,
    })
}

fn integral_winding(w: Complex64) -> Result<u64, NevanlinnaError> {
    let k = w.re.round();
    if (w.re - k).abs() > WINDING_TOL || w.im.abs() > WINDING_TOL || k < 0.0 {
        return Err(NevanlinnaError::NonIntegralWinding { re: w.re, im: w.im });
    }
    Ok(k as u64)
}

/// Every zero of a nonzero polynomial, with exact multiplicities.
pub fn polynomial_zeros(p: &UniPoly) -> Result<Vec<ZeroRecord>, NevanlinnaError> {
    let m0 = p.order_at_zero().ok_or(NevanlinnaError::IdenticallyZero)?;
    let shifted = UniPoly::new(p.coeffs()[m0 as usize..].to_vec());
    let mut found: Vec<(Complex64, u32)> = Vec::new();
    if m0 > 0 {
        found.push((Complex64::new(0.0, 0.0), m0));
    }
    for (factor, mult) in shifted.square_free_decomposition() {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        for root in aberth(&factor.to_c64())? {
            found.push((root, mult));
        }
    }
    let records = found
        .iter()
        .map(|&(z, m)| {
            let gap = found
                .iter()
                .filter(|(w, _)| *w != z)
                .map(|(w, _)| (w - z).norm())
                .fold(f64::INFINITY, f64::min);
            ZeroRecord {
                location: z,
                multiplicity: m,
                certified_radius: CERTIFY_RADIUS.min(gap / 2.0),
            }
        })
        .collect();
    Ok(records)
}

fn horner_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Simultaneous Aberth–Ehrlich iteration for all roots of a polynomial
/// (ascending coefficients) with simple roots, followed by Newton polish.
pub fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>, NevanlinnaError> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if deg == 1 {
        return Ok(vec![-monic[0]]);
    }
    // Fujiwara-type bound on the root moduli
    let bound = (0..deg)
        .map(|k| monic[k].norm().powf(1.0 / (deg - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-8);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(bound, std::f64::consts::TAU * k as f64 / deg as f64 + 0.4))
        .collect();
    let mut converged = false;
    for _ in 0..2000 {
        let mut biggest: f64 = 0.0;
        for k in 0..deg {
            let (p, dp) = horner_with_derivative(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                biggest = biggest.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if biggest < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged
        && z.iter()
            .any(|&w| horner_with_derivative(&monic, w).0.norm() > 1e-8 * (1.0 + w.norm()).powi(deg as i32))
    {
        return Err(NevanlinnaError::RootFinderNonConvergence);
    }
    for w in z.iter_mut() {
        for _ in 0..4 {
            let (p, dp) = horner_with_derivative(&monic, *w);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *w -= step;
            if step.norm() <= 1e-17 * (1.0 + w.norm()) {
                break;
            }
        }
    }
    Ok(z)
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Cell {
    fn half_width(&self) -> f64 {
        0.5 * (self.x1 - self.x0).max(self.y1 - self.y0)
    }

    fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    fn contains(&self, z: Complex64) -> bool {
        z.re >= self.x0 && z.re <= self.x1 && z.im >= self.y0 && z.im <= self.y1
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.x0, self.y0),
            Complex64::new(self.x1, self.y0),
            Complex64::new(self.x1, self.y1),
            Complex64::new(self.x0, self.y1),
        ]
    }

    fn split(&self, fx: f64, fy: f64) -> [Cell; 4] {
        let xm = self.x0 + fx * (self.x1 - self.x0);
        let ym = self.y0 + fy * (self.y1 - self.y0);
        [
            Cell {
                x0: self.x0,
                x1: xm,
                y0: self.y0,
                y1: ym,
            },
            Cell {
                x0: xm,
                x1: self.x1,
                y0: self.y0,
                y1: ym,
            },
            Cell {
                x0: self.x0,
                x1: xm,
                y0: ym,
                y1: self.y1,
            },
            Cell {
                x0: xm,
                x1: self.x1,
                y0: ym,
                y1: self.y1,
            },
        ]
    }
}

const SPLIT_FRACTIONS: [f64; 5] = [0.5, 0.4631, 0.5377, 0.4159, 0.5813];
const MIN_HALF_WIDTH: f64 = 1e-9;

struct Subdivider {
    derivs: Vec<CompiledExpr>,
    source: AnalyticExpr,
    tol: f64,
}

impl Subdivider {
    fn deriv(&mut self, k: usize) -> &CompiledExpr {
        while self.derivs.len() <= k {
            let order = self.derivs.len();
            self.derivs.push(self.source.nth_derivative(order).compile());
        }
        &self.derivs[k]
    }

    /// Zero count inside the cell, or `None` when the boundary integral is
    /// not close to an integer (a zero sits on or near the boundary).
    fn count(&mut self, cell: &Cell) -> Option<u64> {
        self.deriv(1);
        let (g, dg) = (&self.derivs[0], &self.derivs[1]);
        let h = |z: Complex64| dg.eval(z) / g.eval(z);
        let c = cell.corners();
        let mut total = Complex64::new(0.0, 0.0);
        for k in 0..4 {
            total += segment_integral(&h, c[k], c[(k + 1) % 4], 1e-8).ok()?;
        }
        integral_winding(total / Complex64::new(0.0, std::f64::consts::TAU)).ok()
    }

    /// Newton's method on `g^{(k−1)}` from the cell center, then a winding
    /// certificate around the limit. Returns a zero of multiplicity `k`
    /// lying in the cell.
    fn certify(&mut self, cell: &Cell, k: u64) -> Option<ZeroRecord> {
        let k = k as usize;
        self.deriv(k);
        let (h, dh) = (&self.derivs[k - 1], &self.derivs[k]);
        let mut z = cell.center();
        let mut ok = false;
        for _ in 0..100 {
            let step = h.eval(z) / dh.eval(z);
            if !step.is_finite() {
                return None;
            }
            z -= step;
            if step.norm() <= 1e-14 * (1.0 + z.norm()) {
                ok = true;
                break;
            }
        }
        if !ok || !cell.contains(z) {
            return None;
        }
        let (g, dg) = (&self.derivs[0], &self.derivs[1]);
        let mut rho = CERTIFY_RADIUS;
        while rho >= 1e-7 {
            let w = circle_winding(|u| g.eval(u), |u| dg.eval(u), z, rho, 1e-6).ok()?;
            match integral_winding(w) {
                Ok(m) if m as usize == k => {
                    return Some(ZeroRecord {
                        location: z,
                        multiplicity: k as u32,
                        certified_radius: rho,
                    })
                }
                Ok(m) if m as usize > k => rho /= 10.0,
                _ => return None,
            }
        }
        None
    }

    fn run(&mut self, cell: Cell, count: u64, out: &mut Vec<ZeroRecord>) -> Result<(), NevanlinnaError> {
        if count == 0 {
            return Ok(());
        }
        let small = cell.half_width() <= CERTIFY_RADIUS;
        if count == 1 || small {
            if let Some(z) = self.certify(&cell, count) {
                out.push(z);
                return Ok(());
            }
        }
        if cell.half_width() < MIN_HALF_WIDTH {
            return Err(NevanlinnaError::InsufficientResolution { near: cell.center() });
        }
        for &fx in &SPLIT_FRACTIONS {
            for &fy in &SPLIT_FRACTIONS {
                let kids = cell.split(fx, fy);
                let counts: Option<Vec<u64>> = kids.iter().map(|c| self.count(c)).collect();
                if let Some(cs) = counts {
                    if cs.iter().sum::<u64>() == count {
                        for (kid, c) in kids.iter().zip(cs) {
                            self.run(*kid, c, out)?;
                        }
                        return Ok(());
                    }
                }
            }
        }
        Err(NevanlinnaError::InsufficientResolution { near: cell.center() })
    }
}

fn subdivision_zeros(g: &AnalyticExpr, radius: f64, tol: f64) -> Result<Vec<ZeroRecord>, NevanlinnaError> {
    let mut sub = Subdivider {
        derivs: Vec::new(),
        source: g.clone(),
        tol,
    };
    for k in 0..8 {
        let s = radius * (1.05 + 0.013 * k as f64);
        let cell = Cell {
            x0: -s,
            x1: s,
            y0: -s,
            y1: s,
        };
        if let Some(c) = sub.count(&cell) {
            let mut out = Vec::new();
            sub.run(cell, c, &mut out)?;
            for z in out.iter_mut() {
                if z.location.norm() < sub.tol {
                    // snap to the origin only if the origin is an exact zero
                    if g.exact_order_at_zero().is_some_and(|m| m == z.multiplicity) {
                        z.location = Complex64::new(0.0, 0.0);
                    }
                }
            }
            return Ok(out);
        }
    }
    Err(NevanlinnaError::InsufficientResolution {
        near: Complex64::new(radius, 0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_expr;

    fn e(s: &str) -> AnalyticExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn polynomial_route() {
        let zs = locate_zeros(&e("z^2*(z-1)"), 2.0, 1e-8).unwrap();
        assert_eq!(zs.zeros.len(), 2);
        assert_eq!(zs.zeros[0].location, Complex64::new(0.0, 0.0));
        assert_eq!(zs.zeros[0].multiplicity, 2);
        assert!((zs.zeros[1].location - 1.0).norm() < 1e-12);
        assert_eq!(zs.zeros[1].multiplicity, 1);
        assert_eq!(zs.outer_winding, 3);
    }

    #[test]
    fn exp_has_no_zeros() {
        let zs = locate_zeros(&e("exp(z)"), 10.0, 1e-8).unwrap();
        assert!(zs.zeros.is_empty());
        assert_eq!(zs.outer_winding, 0);
    }

    #[test]
    fn one_plus_z_plus_exp() {
        let zs = locate_zeros(&e("1 + z + exp(z)"), 3.0, 1e-8).unwrap();
        let real = zs.zeros.iter().find(|z| z.location.im.abs() < 1e-6).expect("real zero");
        assert!((real.location.re + 1.2785).abs() < 1e-3);
        assert_eq!(real.multiplicity, 1);
        assert_eq!(zs.total_multiplicity(), zs.outer_winding);
    }

    #[test]
    fn multiple_transcendental_zero() {
        // (z − 1/2)^3 e^z + (z − 1/2)^3 has a triple zero at 1/2
        let zs = locate_zeros(&e("(z - 1/2)^3*(exp(z) + 2)"), 1.0, 1e-8).unwrap();
        let z = zs.zeros.iter().find(|z| (z.location - 0.5).norm() < 1e-4).unwrap();
        assert_eq!(z.multiplicity, 3);
        assert_eq!(zs.total_multiplicity(), zs.outer_winding);
    }

    #[test]
    fn radius_is_perturbed_off_a_zero() {
        let zs = locate_zeros(&e("z - 2"), 2.0, 1e-8).unwrap();
        assert!(zs.was_perturbed());
        assert!(zs.radius > 2.0);
        assert_eq!(zs.total_multiplicity(), 1);
    }

    #[test]
    fn aberth_cubic() {
        let roots = aberth(&UniPoly::from_integers(&[-6, 11, -6, 1]).to_c64()).unwrap();
        let mut re: Vec<f64> = roots.iter().map(|r| r.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (r, t) in re.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - t).abs() < 1e-12);
        }
    }
}
