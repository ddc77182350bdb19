use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smt_truncation::algebra::{binomial, graded_dim, hilbert_quotient};
use smt_truncation::filtration::{delta_lower_bound, enumerate_tuples, Filtration};
use smt_truncation::harness::random_zero_dimensional_system;
use smt_truncation::poly::HomogeneousPoly;

fn powers(n: usize, d: u32) -> Vec<HomogeneousPoly> {
    (1..=n).map(|j| HomogeneousPoly::variable(n + 1, j).pow(d)).collect()
}

fn instances() -> impl Iterator<Item = (usize, u32, u32)> {
    (1..=2usize).flat_map(|n| (1..=3u32).flat_map(move |d| (1..=12u32).map(move |a| (n, d, a))))
}

#[test]
fn tuples_ascend_and_are_complete() {
    for n in 1..=4usize {
        for bound in 0..=6u32 {
            let ts = enumerate_tuples(n, bound);
            assert!(ts.windows(2).all(|w| w[0] < w[1]), "n={n} bound={bound}");
            assert_eq!(ts.len() as u64, binomial(bound as u64 + n as u64, n as u64));
            assert!(ts.iter().all(|t| t.weight() <= bound));
        }
    }
}

#[test]
fn levels_nest_and_basis_has_full_rank() {
    for (n, d, alpha) in instances() {
        let f = Filtration::build(&powers(n, d), alpha).unwrap();
        assert!(f.levels.windows(2).all(|w| w[0].dim >= w[1].dim), "({n},{d},{alpha})");
        assert_eq!(f.basis_rank() as u64, graded_dim(n + 1, alpha), "({n},{d},{alpha})");
    }
}

#[test]
fn stable_range_quotients_are_d_to_the_n() {
    for (n, d, alpha) in instances().filter(|(_, d, a)| a % d == 0) {
        let f = Filtration::build(&powers(n, d), alpha).unwrap();
        let top = (alpha / d) as i64 - n as i64;
        for l in f.levels.iter().filter(|l| l.index.weight() as i64 <= top) {
            assert_eq!(
                l.delta as u64,
                (d as u64).pow(n as u32),
                "({n},{d},{alpha}) at {}",
                l.index
            );
        }
    }
}

#[test]
fn delta_is_symmetric_and_above_the_bound() {
    for (n, d, alpha) in instances().filter(|(n, d, a)| a % d == 0 && *a > *n as u32 * d) {
        let f = Filtration::build(&powers(n, d), alpha).unwrap();
        let sums = f.weighted_sums();
        assert!(sums.windows(2).all(|w| w[0] == w[1]), "({n},{d},{alpha}): {sums:?}");
        let delta = BigRational::from_integer(BigInt::from(sums[0]));
        assert!(delta >= delta_lower_bound(n as u64, d as u64, alpha as u64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quotients_match_hilbert_function(
        seed in any::<u64>(),
        n in 1usize..=2,
        d in 1u32..=2,
        alpha in 1u32..=6,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gs = random_zero_dimensional_system(&mut rng, &vec![d; n]);
        let f = Filtration::build(&gs, alpha).unwrap();
        for l in &f.levels {
            let h = hilbert_quotient(&gs, alpha - d * l.index.weight()).unwrap();
            prop_assert_eq!(l.delta as u64, h, "level {}", l.index);
        }
        prop_assert_eq!(f.basis_rank(), f.dimension());
    }
}
