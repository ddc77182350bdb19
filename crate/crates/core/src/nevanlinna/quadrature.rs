//! Circle averages `(1/2π)∫_0^{2π} φ(θ) dθ` by the composite trapezoid rule
//! with node doubling, and contour integrals along segments by adaptive
//! Gauss–Legendre.

use std::f64::consts::TAU;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;

use super::NevanlinnaError;

/// Batches at least this large are evaluated on the rayon pool. The sum is
/// always taken sequentially afterwards, so results do not depend on the
/// thread count.
const PARALLEL_BATCH: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleQuadrature {
    pub tol: f64,
    pub min_nodes: usize,
    pub max_nodes: usize,
}

impl Default for CircleQuadrature {
    fn default() -> Self {
        Self::with_tol(1e-4)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub nodes: usize,
}

/// `Σ f(2πk/n)` over the given `k`.
fn batch_sum<F>(indices: Vec<usize>, n: usize, f: &F) -> Complex64
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let theta = |k: usize| TAU * k as f64 / n as f64;
    if indices.len() >= PARALLEL_BATCH {
        let vals: Vec<Complex64> = indices.par_iter().map(|&k| f(theta(k))).collect();
        vals.into_iter().sum()
    } else {
        indices.into_iter().map(|k| f(theta(k))).sum()
    }
}

impl CircleQuadrature {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            min_nodes: 256,
            max_nodes: 1 << 20,
        }
    }

    /// Mean of a complex-valued periodic integrand.
    pub fn mean_complex<F>(&self, f: F) -> Result<Estimate<Complex64>, NevanlinnaError>
    where
        F: Fn(f64) -> Complex64 + Sync,
    {
        let mut n = 16usize;
        let mut sum = batch_sum((0..n).collect(), n, &f);
        let mut prev = sum / n as f64;
        if !prev.is_finite() {
            return Err(NevanlinnaError::NonFinite);
        }
        while n < self.max_nodes {
            // new nodes sit halfway between the old ones
            let odd = batch_sum((0..n).map(|k| 2 * k + 1).collect(), 2 * n, &f);
            sum += odd;
            n *= 2;
            let cur = sum / n as f64;
            if !cur.is_finite() {
                return Err(NevanlinnaError::NonFinite);
            }
            if n >= self.min_nodes && (cur - prev).norm() < self.tol {
                return Ok(Estimate { value: cur, nodes: n });
            }
            prev = cur;
        }
        Err(NevanlinnaError::QuadratureNonConvergence { nodes: n })
    }

    pub fn mean<F>(&self, f: F) -> Result<Estimate<f64>, NevanlinnaError>
    where
        F: Fn(f64) -> f64 + Sync,
    {
        let e = self.mean_complex(|t| Complex64::new(f(t), 0.0))?;
        Ok(Estimate {
            value: e.value.re,
            nodes: e.nodes,
        })
    }
}

/// Winding number `(1/2πi)∮ g'/g dz` of `g` around the circle `|z − c| = ρ`,
/// returned unrounded.
pub fn circle_winding<G, D>(g: G, dg: D, center: Complex64, rho: f64, tol: f64) -> Result<Complex64, NevanlinnaError>
where
    G: Fn(Complex64) -> Complex64 + Sync,
    D: Fn(Complex64) -> Complex64 + Sync,
{
    let quad = CircleQuadrature::with_tol(tol);
    // dz = i (z − c) dθ, so (1/2πi)∮ = mean over θ of (z − c) g'/g
    quad.mean_complex(|t| {
        let w = Complex64::from_polar(rho, t);
        let z = center + w;
        w * dg(z) / g(z)
    })
    .map(|e| e.value)
}

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        GaussLegendre::new(NonZeroUsize::new(16).unwrap())
            .as_node_weight_pairs()
            .to_vec()
    })
}

/// Gauss–Legendre estimates of `∫ h dz` and `∫ |h| |dz|` on one segment.
fn gl_segment<H: Fn(Complex64) -> Complex64>(h: &H, a: Complex64, b: Complex64) -> (Complex64, f64) {
    let mid = (a + b) * 0.5;
    let half = (b - a) * 0.5;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    for &(x, w) in rule() {
        let v = h(mid + half * x) * w;
        acc += v;
        abs += v.norm();
    }
    (acc * half, abs * half.norm())
}

/// Relative accuracy floor, measured against `∫ |h| |dz|`, below which
/// rounding noise in `h` makes further bisection pointless.
const NOISE_FLOOR: f64 = 1e-7;

/// `∫_a^b h(z) dz` along the straight segment, bisecting until the
/// two-halves estimate agrees with the whole to within an absolute `tol`
/// (split evenly between the halves) or to the noise floor.
pub fn segment_integral<H>(h: &H, a: Complex64, b: Complex64, tol: f64) -> Result<Complex64, NevanlinnaError>
where
    H: Fn(Complex64) -> Complex64,
{
    fn rec<H: Fn(Complex64) -> Complex64>(
        h: &H,
        a: Complex64,
        b: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Result<Complex64, NevanlinnaError> {
        let m = (a + b) * 0.5;
        let (left, labs) = gl_segment(h, a, m);
        let (right, rabs) = gl_segment(h, m, b);
        let refined = left + right;
        if !refined.is_finite() {
            return Err(NevanlinnaError::NonFinite);
        }
        if (refined - whole).norm() <= tol.max(NOISE_FLOOR * (labs + rabs)) {
            return Ok(refined);
        }
        if depth == 0 {
            return Err(NevanlinnaError::QuadratureNonConvergence { nodes: 0 });
        }
        Ok(rec(h, a, m, left, tol / 2.0, depth - 1)? + rec(h, m, b, right, tol / 2.0, depth - 1)?)
    }
    rec(h, a, b, gl_segment(h, a, b).0, tol, 30)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_means() {
        let q = CircleQuadrature::with_tol(1e-12);
        let e = q.mean(|t| (t.cos()).exp()).unwrap();
        // I_0(1)
        assert!((e.value - 1.2660658777520082).abs() < 1e-12);
        let e = q.mean(|t| (2.0 * t).sin().powi(2)).unwrap();
        assert!((e.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn kinked_mean_converges() {
        // mean of max(cos θ, 0) is 1/π
        let q = CircleQuadrature::with_tol(1e-7);
        let e = q.mean(|t| t.cos().max(0.0)).unwrap();
        assert!((e.value - 1.0 / std::f64::consts::PI).abs() < 1e-6);
    }

    #[test]
    fn windings() {
        let g = |z: Complex64| z * z * (z - 1.0);
        let dg = |z: Complex64| 3.0 * z * z - 2.0 * z;
        let w = circle_winding(g, dg, Complex64::new(0.0, 0.0), 2.0, 1e-10).unwrap();
        assert!((w - Complex64::new(3.0, 0.0)).norm() < 1e-8);
        let w = circle_winding(g, dg, Complex64::new(1.0, 0.0), 1e-3, 1e-10).unwrap();
        assert!((w - Complex64::new(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn segment_rule() {
        let v = segment_integral(
            &|z: Complex64| z * z,
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 1.0),
            1e-12,
        )
        .unwrap();
        let exact = Complex64::new(1.0, 1.0).powi(3) / 3.0;
        assert!((v - exact).norm() < 1e-12);
    }
}
