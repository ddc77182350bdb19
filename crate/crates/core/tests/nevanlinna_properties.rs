mod common;

use common::{factored, root_spec, scenario_path};
use proptest::prelude::*;
use smt_truncation::harness::Scenario;
use smt_truncation::nevanlinna::{
    characteristic, fmt_residual, locate_zeros, CircleQuadrature, TargetZeros, Truncation,
};
use smt_truncation::poly::{curve_compose, parse_form, AnalyticExpr, ComplexRational, Curve, UniPoly};

const RADIUS: f64 = 4.0;

fn graph(p: &UniPoly) -> Curve {
    Curve::new(vec![AnalyticExpr::from_integer(1), AnalyticExpr::polynomial(p.clone())]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zero_counter_recovers_factorization(spec in root_spec()) {
        let (p, roots) = factored(&spec, 10);
        let set = locate_zeros(&AnalyticExpr::polynomial(p.clone()), RADIUS, 1e-10).unwrap();
        prop_assert!(set.exact_multiplicities);
        let mut found: Vec<u32> = set.zeros.iter().map(|z| z.multiplicity).collect();
        let mut truth: Vec<u32> = p.square_free_decomposition().iter()
            .flat_map(|(f, m)| std::iter::repeat_n(*m, f.degree().unwrap_or(0)))
            .collect();
        found.sort();
        truth.sort();
        prop_assert_eq!(&found, &truth);
        for (r, m) in &roots {
            let target = r.to_c64();
            let hit = set.zeros.iter().find(|z| (z.location - target).norm() < 1e-8);
            prop_assert!(hit.is_some_and(|z| z.multiplicity == *m), "root {} missing", r);
        }
    }

    #[test]
    fn truncated_counting_is_monotone(spec in root_spec(), shift in 0u32..3) {
        let (p, _) = factored(&spec, 10);
        let tz = TargetZeros::locate(&graph(&p), &parse_form("x1", 2).unwrap(), RADIUS, 1e-10).unwrap();
        let max_mult = tz.zeros.zeros.iter().map(|z| z.multiplicity as u64).max().unwrap_or(0);
        let radii = [1.3, 2.2, 3.1, 3.9];
        for &r in &radii {
            let full = tz.counting(r, Truncation::Infinite);
            let mut prev = f64::NEG_INFINITY;
            for m in 1..=4u64 {
                let nm = tz.counting(r, Truncation::Finite(m));
                prop_assert!(nm >= prev - 1e-12);
                prop_assert!(nm <= full + 1e-12);
                prev = nm;
            }
            let saturated = tz.counting(r, Truncation::Finite(max_mult + shift as u64));
            prop_assert!((saturated - full).abs() < 1e-12);
        }
        for m in [Truncation::Finite(1), Truncation::Finite(2), Truncation::Infinite] {
            prop_assert!(radii.windows(2).all(|w| tz.counting(w[0], m) <= tz.counting(w[1], m) + 1e-12));
            prop_assert!(radii.windows(2).all(|w| tz.count(w[0], m) <= tz.count(w[1], m)));
        }
    }

    #[test]
    fn powers_scale_orders(spec in proptest::collection::vec((-4i64..=4, -4i64..=4, 1u32..=2), 1..=3), k in 1u32..=3) {
        let (p, roots) = factored(&spec, 4);
        let f = Curve::new(vec![
            AnalyticExpr::polynomial(UniPoly::one().add(&UniPoly::z())),
            AnalyticExpr::polynomial(p.clone()),
        ]);
        prop_assume!(f.is_ok());
        let f = f.unwrap();
        let q = parse_form("x1", 2).unwrap();
        let qk = q.pow(k);
        let g = curve_compose(&q, &f).unwrap().as_polynomial().unwrap();
        let gk = curve_compose(&qk, &f).unwrap().as_polynomial().unwrap();
        for (r, _) in &roots {
            prop_assert_eq!(gk.order_at(r).unwrap(), k * g.order_at(r).unwrap());
        }
        prop_assert_eq!(gk.order_at(&ComplexRational::from_integer(7)), Some(0));
        let tz = TargetZeros::locate(&f, &q, RADIUS, 1e-10).unwrap();
        let tzk = TargetZeros::locate(&f, &qk, RADIUS, 1e-10).unwrap();
        for m in 1..=3u64 {
            for r in [1.7, 3.3] {
                let lhs = tzk.counting(r, Truncation::Finite(m));
                let rhs = k as f64 * tz.counting(r, Truncation::Finite(m));
                prop_assert!(lhs <= rhs + 1e-9, "{} > {}", lhs, rhs);
            }
        }
    }
}

fn shipped() -> Vec<Scenario> {
    let dir = scenario_path("");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    assert!(!paths.is_empty());
    paths.iter().map(|p| Scenario::load(p).unwrap()).collect()
}

#[test]
fn characteristic_is_converged_on_shipped_scenarios() {
    let loose = CircleQuadrature::with_tol(1e-4);
    let tight = CircleQuadrature::with_tol(1e-10);
    for s in shipped() {
        for &r in &s.r_grid {
            let a = characteristic(&s.curve, r, &loose).unwrap();
            let b = characteristic(&s.curve, r, &tight).unwrap();
            assert!((a - b).abs() < 1e-4, "{:?} at r = {r}: {a} vs {b}", s.curve_source);
        }
    }
}

#[test]
fn fmt_spread_is_small_on_shipped_scenarios() {
    let quad = CircleQuadrature::default();
    for s in shipped() {
        for (q, name) in s.targets.iter().zip(&s.target_source) {
            let res = fmt_residual(&s.curve, q, &s.r_grid, &quad).unwrap();
            assert!(res.spread <= 0.05, "{name}: spread {}", res.spread);
        }
    }
}
