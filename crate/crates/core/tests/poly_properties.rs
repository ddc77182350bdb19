mod common;

use common::{form, gauss, nonzero_form, unipoly};
use num_complex::Complex64;
use proptest::prelude::*;
use smt_truncation::algebra::binomial;
use smt_truncation::poly::{curve_compose, monomial_basis, wronskian, AnalyticExpr, Curve, UniPoly};

fn point() -> impl Strategy<Value = Complex64> {
    (-1.5f64..1.5, -1.5f64..1.5).prop_map(|(a, b)| Complex64::new(a, b))
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1.0)
}

#[test]
fn monomial_basis_sizes() {
    for v in 1..=6usize {
        for d in 0..=12u32 {
            let basis = monomial_basis(v, d);
            assert_eq!(
                basis.len() as u64,
                binomial(d as u64 + v as u64 - 1, v as u64 - 1),
                "v={v} d={d}"
            );
            assert!(basis.iter().all(|m| m.degree() == d));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_commutes_and_adds_degrees(
        (p, q) in (1usize..=3).prop_flat_map(|v| (form(v, 2), form(v, 1)))
    ) {
        let pq = p.mul(&q).unwrap();
        prop_assert_eq!(&pq, &q.mul(&p).unwrap());
        prop_assert_eq!(pq.degree(), 3);
    }

    #[test]
    fn mul_associates(
        (a, b, c) in (1usize..=3).prop_flat_map(|v| (form(v, 1), form(v, 2), form(v, 1)))
    ) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn compose_is_linear_and_multiplicative(
        p in nonzero_form(3, 1),
        q in nonzero_form(3, 2),
        s in nonzero_form(3, 2),
        f1 in unipoly(2),
        zs in proptest::collection::vec(point(), 10),
    ) {
        let f = Curve::new(vec![
            AnalyticExpr::from_integer(1),
            AnalyticExpr::polynomial(f1),
            AnalyticExpr::exp_term(UniPoly::one(), UniPoly::z()),
        ]).unwrap();
        let pq = curve_compose(&p.mul(&q).unwrap(), &f).unwrap();
        let sum = curve_compose(&q.add(&s).unwrap(), &f).unwrap();
        let (cp, cq, cs) = (curve_compose(&p, &f).unwrap(), curve_compose(&q, &f).unwrap(), curve_compose(&s, &f).unwrap());
        for z in zs {
            prop_assert!(close(pq.eval(z), cp.eval(z) * cq.eval(z), 1e-9));
            prop_assert!(close(sum.eval(z), cq.eval(z) + cs.eval(z), 1e-9));
        }
    }

    #[test]
    fn derivative_matches_central_difference(
        a in unipoly(3),
        b in unipoly(2),
        e in unipoly(1),
        z in point(),
    ) {
        let g = AnalyticExpr::polynomial(a).add(&AnalyticExpr::exp_term(b, e));
        let h = 1e-5;
        let step = Complex64::new(h, 0.0);
        let fd = (g.eval(z + step) - g.eval(z - step)) / (2.0 * h);
        let exact = g.derivative().eval(z);
        prop_assert!(close(fd, exact, 1e-6), "fd {} vs {}", fd, exact);
    }

    #[test]
    fn dependent_family_has_zero_wronskian(
        a in unipoly(4),
        b in unipoly(4),
        c in (-3i64..=3, -3i64..=3),
    ) {
        let combo = a.scale(&gauss(c.0, 0)).add(&b.scale(&gauss(c.1, 0)));
        let family: Vec<AnalyticExpr> = [a, b, combo].into_iter().map(AnalyticExpr::polynomial).collect();
        prop_assert!(wronskian(&family).is_zero());
    }
}

#[test]
fn wronskian_of_power_basis() {
    for m in 1..=6u32 {
        let family: Vec<AnalyticExpr> = (0..m).map(|k| AnalyticExpr::polynomial(UniPoly::z().pow(k))).collect();
        let expected: i64 = (0..m as i64).map(|k| (1..=k).product::<i64>()).product();
        assert_eq!(wronskian(&family), AnalyticExpr::from_integer(expected), "m = {m}");
    }
}
