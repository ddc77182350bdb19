mod common;

use common::{gauss, nonzero_form};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smt_truncation::algebra::{graded_dim, hilbert_quotient, ideal_graded_dim, is_general_position, nss_certificate};
use smt_truncation::harness::random_zero_dimensional_system;
use smt_truncation::poly::HomogeneousPoly;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quotient_and_ideal_fill_the_graded_piece(
        gs in proptest::collection::vec(nonzero_form(3, 2), 1..=3),
        alpha in 0u32..=6,
    ) {
        let total = hilbert_quotient(&gs, alpha).unwrap() + ideal_graded_dim(&gs, alpha).unwrap();
        prop_assert_eq!(total, graded_dim(3, alpha));
    }

    #[test]
    fn triangular_systems_meet_the_product_of_degrees(
        seed in any::<u64>(),
        degrees in proptest::collection::vec(1u32..=3, 1..=3),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gs = random_zero_dimensional_system(&mut rng, &degrees);
        let product: u64 = degrees.iter().map(|&d| d as u64).product();
        let sum: u32 = degrees.iter().sum();
        prop_assert_eq!(hilbert_quotient(&gs, sum).unwrap(), product);
        prop_assert_eq!(hilbert_quotient(&gs, sum + 1).unwrap(), product);
    }

    #[test]
    fn certificates_expand_exactly(
        qs in proptest::collection::vec(nonzero_form(3, 2), 3),
    ) {
        prop_assume!(is_general_position(&qs, 2).unwrap().holds);
        for k in 0..3 {
            let c = nss_certificate(&qs, k).unwrap();
            prop_assert!(c.verify(&qs));
            // determinism of the cofactor choice
            prop_assert_eq!(&c, &nss_certificate(&qs, k).unwrap());
        }
    }

    #[test]
    fn general_position_ignores_order_and_scaling(
        qs in proptest::collection::vec(nonzero_form(3, 1), 4..=5),
        rotation in 0usize..5,
        scale in (1i64..=3, -2i64..=2),
    ) {
        let base = is_general_position(&qs, 2).unwrap().holds;
        let mut permuted: Vec<HomogeneousPoly> = qs.clone();
        permuted.rotate_left(rotation % qs.len());
        permuted.swap(0, 1);
        permuted[0] = permuted[0].scale(&gauss(scale.0, scale.1));
        prop_assert_eq!(is_general_position(&permuted, 2).unwrap().holds, base);
    }
}
