use super::HarnessError;
use crate::filtration::Filtration;
use crate::poly::{curve_compose, wronskian, ComplexRational, Curve, HomogeneousPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskianOrderReport {
    pub alpha: u32,
    /// `M = C(α+n, n)`, the size of the adapted basis.
    pub m: u64,
    pub delta: u64,
    /// `k_j = ord_z(γ_j∘f)`.
    pub orders: Vec<u32>,
    /// `Δ · Σ_{k_j ≥ M} (k_j − M)`.
    pub claimed: u64,
    /// `ord_z W(ψ_1∘f, …, ψ_M∘f)`; `None` when the Wronskian vanishes
    /// identically.
    pub observed: Option<u32>,
}

impl WronskianOrderReport {
    pub fn degenerate(&self) -> bool {
        self.observed.is_none()
    }

    /// `Some(observed ≥ claimed)`, or `None` for a degenerate instance.
    pub fn holds(&self) -> Option<bool> {
        self.observed.map(|o| o as u64 >= self.claimed)
    }
}

/// Compares the exact vanishing order at `z` of the Wronskian of the
/// adapted basis composed with `f` against the amplified lower bound.
pub fn wronskian_order_check(
    gammas: &[HomogeneousPoly],
    alpha: u32,
    f: &Curve,
    z: &ComplexRational,
) -> Result<WronskianOrderReport, HarnessError> {
    if !f.is_polynomial() {
        return Err(HarnessError::NotPolynomialCurve);
    }
    let filtration = Filtration::build(gammas, alpha)?;
    let delta = filtration.big_delta()?;
    let m = filtration.dimension() as u64;
    let mut orders = Vec::with_capacity(gammas.len());
    for g in gammas {
        let p = curve_compose(g, f)?.as_polynomial().expect("polynomial curve");
        orders.push(
            p.order_at(z)
                .ok_or_else(|| HarnessError::CurveInTarget(g.to_string()))?,
        );
    }
    let excess: u64 = orders.iter().map(|&k| (k as u64).saturating_sub(m)).sum();
    let images = filtration
        .basis
        .iter()
        .map(|el| curve_compose(&el.psi, f))
        .collect::<Result<Vec<_>, _>>()?;
    let w = wronskian(&images).as_polynomial().expect("polynomial family");
    Ok(WronskianOrderReport {
        alpha,
        m,
        delta,
        claimed: delta * excess,
        observed: w.order_at(z),
        orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_expr, parse_form};

    fn curve(parts: &[&str]) -> Curve {
        Curve::new(parts.iter().map(|s| parse_expr(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn bound_zero_case() {
        let rep = wronskian_order_check(
            &[parse_form("x1", 2).unwrap()],
            2,
            &curve(&["z^3", "1"]),
            &ComplexRational::zero(),
        )
        .unwrap();
        assert_eq!(rep.m, 3);
        assert_eq!(rep.orders, vec![0]);
        assert_eq!(rep.claimed, 0);
        assert_eq!(rep.holds(), Some(true));
    }

    #[test]
    fn high_order_zero() {
        let rep = wronskian_order_check(
            &[parse_form("x1", 2).unwrap()],
            2,
            &curve(&["1", "z^5"]),
            &ComplexRational::zero(),
        )
        .unwrap();
        assert_eq!(rep.delta, 3);
        assert_eq!(rep.orders, vec![5]);
        assert_eq!(rep.claimed, 6);
        // W(z^10, z^5, 1) = c·z^12
        assert_eq!(rep.observed, Some(12));
    }

    #[test]
    fn point_off_the_targets() {
        let rep = wronskian_order_check(
            &[parse_form("x1", 2).unwrap()],
            2,
            &curve(&["1", "z^5"]),
            &ComplexRational::one(),
        )
        .unwrap();
        assert_eq!(rep.claimed, 0);
    }

    #[test]
    fn rejects_transcendental_curves() {
        assert!(matches!(
            wronskian_order_check(
                &[parse_form("x1", 2).unwrap()],
                2,
                &curve(&["1", "exp(z)"]),
                &ComplexRational::zero()
            ),
            Err(HarnessError::NotPolynomialCurve)
        ));
    }
}
