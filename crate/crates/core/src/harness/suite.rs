use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::report::Table;
use super::wronskian_order::wronskian_order_check;
use crate::algebra::{graded_dim, hilbert_quotient, hilbert_quotient_echelon, is_zero_dimensional, nss_certificate};
use crate::filtration::{
    choose_alpha, delta_lower_bound, filtration_dim, m_exact, ratio_bound_check, truncation_report, Filtration,
};
use crate::nevanlinna::{fmt_residual, CircleQuadrature};
use crate::poly::{monomial_basis, parse_expr, parse_form, ComplexRational, Curve, HomogeneousPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RandomSystemCaps {
    pub systems: usize,
    pub max_n: usize,
    pub max_degree: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationCaps {
    pub max_n: usize,
    pub max_d: u32,
    pub max_alpha: u32,
}

/// Which regression blocks run, and how large they get. A `None` or
/// `false` field disables its block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteCaps {
    pub hilbert: Option<RandomSystemCaps>,
    pub filtration: Option<FiltrationCaps>,
    pub nullstellensatz: Option<RandomSystemCaps>,
    pub bounds: bool,
    pub wronskian: bool,
    pub fmt: bool,
    pub seed: u64,
}

impl Default for SuiteCaps {
    fn default() -> Self {
        Self {
            hilbert: Some(RandomSystemCaps {
                systems: 20,
                max_n: 3,
                max_degree: 3,
            }),
            filtration: Some(FiltrationCaps {
                max_n: 2,
                max_d: 3,
                max_alpha: 12,
            }),
            nullstellensatz: Some(RandomSystemCaps {
                systems: 10,
                max_n: 2,
                max_degree: 2,
            }),
            bounds: true,
            wronskian: true,
            fmt: true,
            seed: 0,
        }
    }
}

impl SuiteCaps {
    pub fn empty() -> Self {
        Self {
            hilbert: None,
            filtration: None,
            nullstellensatz: None,
            bounds: false,
            wronskian: false,
            fmt: false,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteEntry {
    pub name: String,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub entries: Vec<SuiteEntry>,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn entry(&self, name: &str) -> Option<&SuiteEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["block", "passed", "checks", "failures", "detail"]);
        t.meta("all_passed", self.all_passed());
        for e in &self.entries {
            t.push(vec![
                e.name.as_str().into(),
                e.passed.into(),
                e.checks.into(),
                e.failures.join("; ").into(),
                e.detail.as_str().into(),
            ]);
        }
        t
    }
}

/// Accumulates the checks of one block.
struct Block {
    name: &'static str,
    checks: u64,
    failures: Vec<String>,
}

impl Block {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, detail: String) -> SuiteEntry {
        SuiteEntry {
            name: self.name.to_owned(),
            passed: self.failures.is_empty(),
            checks: self.checks,
            failures: self.failures,
            detail,
        }
    }
}

fn small_coefficient(rng: &mut ChaCha8Rng) -> ComplexRational {
    loop {
        let re: i64 = rng.gen_range(-3..=3);
        let im: i64 = if rng.gen_bool(0.25) { rng.gen_range(-2..=2) } else { 0 };
        if re != 0 || im != 0 {
            return ComplexRational::new(
                BigRational::from_integer(re.into()),
                BigRational::from_integer(im.into()),
            );
        }
    }
}

/// `x_v^d + Σ_{w later} c · x_w · η` for the variables in `order`: every
/// form after the leading power is divisible by a later variable, so the
/// forms for `order[..k]` vanish together only where those variables do.
fn triangular_forms(rng: &mut ChaCha8Rng, nvars: usize, order: &[usize], degrees: &[u32]) -> Vec<HomogeneousPoly> {
    order
        .iter()
        .zip(degrees)
        .enumerate()
        .map(|(pos, (&v, &d))| {
            let mut g = HomogeneousPoly::variable(nvars, v).pow(d);
            for &w in &order[pos + 1..] {
                if !rng.gen_bool(0.7) {
                    continue;
                }
                let etas = monomial_basis(nvars, d - 1);
                let eta = &etas[rng.gen_range(0..etas.len())];
                let term = HomogeneousPoly::variable(nvars, w)
                    .mul_monomial(eta)
                    .scale(&small_coefficient(rng));
                g = g.add(&term).expect("same degree");
            }
            g
        })
        .collect()
}

/// `n` forms in `n + 1` variables of the given degrees whose only common
/// zero is `(1 : 0 : … : 0)`: leading powers `x_j^{d_j}` plus random
/// upper-triangular mixing terms.
pub fn random_zero_dimensional_system(rng: &mut ChaCha8Rng, degrees: &[u32]) -> Vec<HomogeneousPoly> {
    let n = degrees.len();
    let order: Vec<usize> = (1..=n).collect();
    triangular_forms(rng, n + 1, &order, degrees)
}

/// A polynomial curve instance for the Wronskian order check.
#[derive(Clone, Debug)]
pub struct WronskianInstance {
    pub gamma: HomogeneousPoly,
    pub alpha: u32,
    pub curve: Curve,
    pub point: ComplexRational,
}

/// Ten `n = 1` instances with `d ≤ 2`, `α ≤ 4`, where `γ∘f` vanishes to
/// high order at the chosen point.
pub fn wronskian_instances() -> Vec<WronskianInstance> {
    let table: [(&str, u32, [&str; 2], ComplexRational); 10] = [
        ("x1", 2, ["1", "z^5"], ComplexRational::zero()),
        ("x1", 3, ["1", "z^7"], ComplexRational::zero()),
        ("x1", 4, ["1 + z", "z^8"], ComplexRational::zero()),
        ("x0 - x1", 2, ["1", "1 + (z - 1)^5"], ComplexRational::one()),
        ("x1^2", 2, ["1", "z^3"], ComplexRational::zero()),
        ("x0^2 - x1^2", 4, ["1", "1 + z^6"], ComplexRational::zero()),
        ("x0*x1", 4, ["z^6", "1 + z"], ComplexRational::zero()),
        ("x1^2 + x0*x1", 2, ["1", "z^4"], ComplexRational::zero()),
        ("x1", 1, ["2 + z", "z^3"], ComplexRational::zero()),
        ("x0^2 + x1^2", 4, ["z^6 + i", "1"], ComplexRational::zero()),
    ];
    table.into_iter()
        .map(|(g, alpha, parts, point)| WronskianInstance {
            gamma: parse_form(g, 2).expect("valid form"),
            alpha,
            curve: Curve::new(parts.iter().map(|p| parse_expr(p).expect("valid expression")).collect())
                .expect("reduced curve"),
            point,
        })
        .collect()
}

fn q(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn hilbert_block(caps: RandomSystemCaps, rng: &mut ChaCha8Rng) -> SuiteEntry {
    let mut b = Block::new("hilbert");
    for k in 0..caps.systems {
        let n = rng.gen_range(1..=caps.max_n);
        let degrees: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=caps.max_degree)).collect();
        let gs = random_zero_dimensional_system(rng, &degrees);
        let product: u64 = degrees.iter().map(|&d| d as u64).product();
        let sum: u32 = degrees.iter().sum();
        b.check(is_zero_dimensional(&gs) == Ok(true), || {
            format!("system {k}: not zero-dimensional")
        });
        for alpha in [sum, sum + 1] {
            let h = hilbert_quotient(&gs, alpha);
            b.check(h == Ok(product), || {
                format!("system {k} α={alpha}: quotient {h:?}, expected {product}")
            });
            let e = hilbert_quotient_echelon(&gs, alpha);
            b.check(e == h, || format!("system {k} α={alpha}: echelon route {e:?} vs {h:?}"));
        }
    }
    b.finish(format!(
        "{} systems, n ≤ {}, degrees ≤ {}",
        caps.systems, caps.max_n, caps.max_degree
    ))
}

/// `(n, d, α)` with `d | α` inside the caps, and the coordinate forms
/// `x_j^d`.
fn power_instances(caps: FiltrationCaps) -> Vec<(usize, u32, u32, Vec<HomogeneousPoly>)> {
    let mut out = Vec::new();
    for n in 1..=caps.max_n {
        for d in 1..=caps.max_d {
            let gs: Vec<HomogeneousPoly> = (1..=n).map(|j| HomogeneousPoly::variable(n + 1, j).pow(d)).collect();
            for alpha in (d..=caps.max_alpha).step_by(d as usize) {
                out.push((n, d, alpha, gs.clone()));
            }
        }
    }
    out
}

fn filtration_blocks(caps: FiltrationCaps) -> Vec<SuiteEntry> {
    let mut stable = Block::new("filtration-stable-range");
    let mut delta = Block::new("delta-arithmetic");
    let mut ratio = Block::new("ratio-chain");
    let mut cross = Block::new("filtration-cross-check");
    let mut levels = 0u64;
    let instances = power_instances(caps);
    for (n, d, alpha, gs) in &instances {
        let (n, d, alpha) = (*n, *d, *alpha);
        let tag = format!("(n,d,α)=({n},{d},{alpha})");
        let f = match Filtration::build(gs, alpha) {
            Ok(f) => f,
            Err(e) => {
                stable.check(false, || format!("{tag}: {e}"));
                continue;
            }
        };
        let m = graded_dim(n + 1, alpha);
        let dn = (d as u64).pow(n as u32);
        let top = (alpha / d) as i64 - n as i64;
        for l in &f.levels {
            levels += 1;
            if (l.index.weight() as i64) <= top {
                stable.check(l.delta as u64 == dn, || {
                    format!("{tag} {}: Δ_(i) = {}, expected {dn}", l.index, l.delta)
                });
            }
        }
        let total: u64 = f.levels.iter().map(|l| l.delta as u64).sum();
        stable.check(total == m, || format!("{tag}: Σ Δ_(i) = {total}, expected {m}"));
        stable.check(f.basis_rank() as u64 == m, || {
            format!("{tag}: basis rank {}", f.basis_rank())
        });

        let sums = f.weighted_sums();
        delta.check(sums.windows(2).all(|w| w[0] == w[1]), || {
            format!("{tag}: asymmetric {sums:?}")
        });
        let bound = delta_lower_bound(n as u64, d as u64, alpha as u64);
        delta.check(q(sums[0]) >= bound, || format!("{tag}: Δ = {} below {bound}", sums[0]));

        if alpha as u64 > n as u64 * d as u64 {
            let half = BigRational::new(1.into(), 2.into());
            match ratio_bound_check(
                n as u64,
                d as u64,
                alpha as u64,
                &q(sums[0]),
                &BigUint::from(m),
                n as u64 + 2,
                &half,
            ) {
                Ok(r) => ratio.check(r.ratio_holds, || {
                    format!("{tag}: Mα/Δ = {} > {}", r.ratio, r.ratio_bound)
                }),
                Err(e) => ratio.check(false, || format!("{tag}: {e}")),
            }
        }

        if alpha <= 6 {
            for l in &f.levels {
                let dim = filtration_dim(gs, alpha, &l.index);
                cross.check(dim == Ok(l.dim), || format!("{tag} {}: {dim:?} vs {}", l.index, l.dim));
            }
        }
    }
    // the smallest nontrivial instance, checked against hand values
    let x1 = [HomogeneousPoly::variable(2, 1)];
    match Filtration::build(&x1, 3).and_then(|f| f.big_delta()) {
        Ok(dl) => {
            delta.check(dl == 6, || format!("(1,1,3): Δ = {dl}, expected 6"));
            delta.check(delta_lower_bound(1, 1, 3) == q(3), || {
                "(1,1,3): lower bound is not 3".into()
            });
            let r = q(m_exact(1, 3).try_into().expect("small")) * q(3) / q(dl);
            delta.check(r == q(2), || format!("(1,1,3): Mα/Δ = {r}, expected 2"));
        }
        Err(e) => delta.check(false, || format!("(1,1,3): {e}")),
    }
    let detail = format!(
        "{} instances, n ≤ {}, d ≤ {}, α ≤ {}",
        instances.len(),
        caps.max_n,
        caps.max_d,
        caps.max_alpha
    );
    vec![
        stable.finish(format!("{detail}, {levels} levels")),
        delta.finish(detail.clone()),
        ratio.finish(detail.clone()),
        cross.finish(format!("{detail}, cross-checked up to α = 6")),
    ]
}

fn nullstellensatz_block(caps: RandomSystemCaps, rng: &mut ChaCha8Rng) -> SuiteEntry {
    let mut b = Block::new("nullstellensatz");
    for s in 0..caps.systems {
        let n = rng.gen_range(1..=caps.max_n);
        let d = rng.gen_range(1..=caps.max_degree);
        let order: Vec<usize> = (0..=n).collect();
        let qs = triangular_forms(rng, n + 1, &order, &vec![d; n + 1]);
        let refs: Vec<&HomogeneousPoly> = qs.iter().collect();
        let top = crate::algebra::macaulay_degree(&refs).max(d);
        for k in 0..=n {
            match nss_certificate(&qs, k) {
                Ok(c) => {
                    b.check(c.verify(&qs), || {
                        format!("system {s}, x{k}: certificate does not verify")
                    });
                    b.check(c.exponent <= top, || {
                        format!("system {s}, x{k}: exponent {} > {top}", c.exponent)
                    });
                }
                Err(e) => b.check(false, || format!("system {s}, x{k}: {e}")),
            }
        }
    }
    b.finish(format!(
        "{} systems of n+1 forms, n ≤ {}, d ≤ {}",
        caps.systems, caps.max_n, caps.max_degree
    ))
}

fn bounds_block() -> SuiteEntry {
    let mut b = Block::new("bounds");
    let half = BigRational::new(1.into(), 2.into());
    let quarter = BigRational::new(1.into(), 4.into());
    for (n, d, alpha, me, mp, flag) in [
        (1u64, 1u64, 19u32, 20u64, 32u64, false),
        (2, 2, 444, 99235, 82944, true),
    ] {
        match truncation_report(n, d, &half, None) {
            Ok(r) => {
                b.check(r.alpha == alpha, || format!("({n},{d},1/2): α = {}", r.alpha));
                b.check(r.m_exact == BigUint::from(me), || {
                    format!("({n},{d},1/2): M_exact = {}", r.m_exact)
                });
                b.check(r.m_paper == BigUint::from(mp), || {
                    format!("({n},{d},1/2): M_paper = {}", r.m_paper)
                });
                b.check(r.paper_bound_exceeded == flag, || {
                    format!("({n},{d},1/2): flag {}", r.paper_bound_exceeded)
                });
            }
            Err(e) => b.check(false, || format!("({n},{d},1/2): {e}")),
        }
    }
    for n in 1..=2u64 {
        for d in 1..=2u64 {
            for eps in [&half, &quarter] {
                let tag = format!("({n},{d},{eps})");
                let res = choose_alpha(n, d, eps).map_err(|e| e.to_string()).and_then(|alpha| {
                    let a = alpha as u64;
                    let lower = delta_lower_bound(n, d, a);
                    ratio_bound_check(n, d, a, &lower, &m_exact(n, a), n + 2, eps).map_err(|e| e.to_string())
                });
                match res {
                    Ok(r) => b.check(r.growth_holds, || {
                        format!("{tag}: growth {} > {}", r.growth, r.growth_bound)
                    }),
                    Err(e) => b.check(false, || format!("{tag}: {e}")),
                }
            }
        }
    }
    b.finish("truncation levels and the growth factor at the ε-driven α".into())
}

fn wronskian_block() -> SuiteEntry {
    let mut b = Block::new("wronskian-order");
    for (k, inst) in wronskian_instances().iter().enumerate() {
        match wronskian_order_check(std::slice::from_ref(&inst.gamma), inst.alpha, &inst.curve, &inst.point) {
            Ok(r) => b.check(r.holds() == Some(true), || {
                format!("instance {k}: observed {:?} < claimed {}", r.observed, r.claimed)
            }),
            Err(e) => b.check(false, || format!("instance {k}: {e}")),
        }
    }
    b.finish("ten n = 1 polynomial curves with high-order zeros".into())
}

fn fmt_block() -> SuiteEntry {
    let mut b = Block::new("fmt-residual");
    let quad = CircleQuadrature::default();
    let curve = |parts: &[&str]| Curve::new(parts.iter().map(|p| parse_expr(p).unwrap()).collect()).unwrap();
    let line = curve(&["z", "1"]);
    for form in ["x0", "x1", "x0 - x1"] {
        let res = fmt_residual(&line, &parse_form(form, 2).unwrap(), &[2.0, 4.0, 8.0, 16.0], &quad);
        match res {
            Ok(r) => b.check(r.spread <= 1e-3, || format!("(z:1), {form}: spread {}", r.spread)),
            Err(e) => b.check(false, || format!("(z:1), {form}: {e}")),
        }
    }
    let exp_curve = curve(&["1", "z", "exp(z)"]);
    match fmt_residual(
        &exp_curve,
        &parse_form("x0 + x1 + x2", 3).unwrap(),
        &[4.0, 8.0, 12.0],
        &quad,
    ) {
        Ok(r) => b.check(r.spread <= 0.05, || format!("(1:z:e^z): spread {}", r.spread)),
        Err(e) => b.check(false, || format!("(1:z:e^z): {e}")),
    }
    b.finish("First Main Theorem residual spreads".into())
}

/// Runs the enabled regression blocks. Failures are reported as entries,
/// never as errors.
pub fn lemma_suite(caps: &SuiteCaps) -> SuiteSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
    let mut entries = Vec::new();
    if let Some(c) = caps.hilbert {
        entries.push(hilbert_block(c, &mut rng));
    }
    if let Some(c) = caps.filtration {
        entries.extend(filtration_blocks(c));
    }
    if let Some(c) = caps.nullstellensatz {
        entries.push(nullstellensatz_block(c, &mut rng));
    }
    if caps.bounds {
        entries.push(bounds_block());
    }
    if caps.wronskian {
        entries.push(wronskian_block());
    }
    if caps.fmt {
        entries.push(fmt_block());
    }
    SuiteSummary { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_caps_give_empty_summary() {
        assert!(lemma_suite(&SuiteCaps::empty()).entries.is_empty());
    }

    #[test]
    fn filtration_block_level_count() {
        let caps = SuiteCaps {
            filtration: Some(FiltrationCaps {
                max_n: 2,
                max_d: 3,
                max_alpha: 12,
            }),
            ..SuiteCaps::empty()
        };
        let s = lemma_suite(&caps);
        assert!(s.all_passed(), "{s:?}");
        let e = s.entry("filtration-stable-range").unwrap();
        assert!(e.checks >= 10);
    }

    #[test]
    fn random_systems_are_zero_dimensional() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for degrees in [vec![2], vec![1, 3], vec![2, 2, 1]] {
            let gs = random_zero_dimensional_system(&mut rng, &degrees);
            assert!(is_zero_dimensional(&gs).unwrap());
        }
    }
}
