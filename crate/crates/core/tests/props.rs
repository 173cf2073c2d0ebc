//! Randomized structural invariants: ring axioms for the polynomial type,
//! the derivation laws for the two operators, the partition bijection, and
//! the unconditional shear expansion, each over arbitrary seeded inputs.

use proptest::prelude::*;

use semiform::operators::{apply_d, apply_delta, taylor_check, ShearDirection, SpaceSignature};
use semiform::partitions::{count_p, enumerate_box_partitions};
use semiform::poly::Polynomial;
use semiform::sample::{random_element, seeded_rng};
use semiform::spaces::{is_semi_invariant, SemiCheckMode};

fn signature() -> impl Strategy<Value = SpaceSignature> {
    (1..=3usize, 1..=3usize)
        .prop_flat_map(|(n, k)| (Just(n), Just(k), 0..=(n * k) as i64))
        .prop_map(|(n, k, m)| SpaceSignature::new(n, k, m))
}

fn one_poly() -> impl Strategy<Value = Polynomial> {
    (signature(), any::<u64>())
        .prop_map(|(sig, seed)| random_element(&sig, &mut seeded_rng(seed)))
}

/// Three polynomials in the same variables, with independent degrees and
/// weights, so sums are heterogeneous while products stay well formed.
fn poly_triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    (1..=3usize, 1..=3usize, 1..=3usize, 1..=3usize)
        .prop_flat_map(|(n, k1, k2, k3)| {
            (
                Just(n),
                Just(k1),
                Just(k2),
                Just(k3),
                0..=(n * k1) as i64,
                0..=(n * k2) as i64,
                0..=(n * k3) as i64,
                any::<u64>(),
            )
        })
        .prop_map(|(n, k1, k2, k3, m1, m2, m3, seed)| {
            let mut rng = seeded_rng(seed);
            (
                random_element(&SpaceSignature::new(n, k1, m1), &mut rng),
                random_element(&SpaceSignature::new(n, k2, m2), &mut rng),
                random_element(&SpaceSignature::new(n, k3, m3), &mut rng),
            )
        })
}

proptest! {
    #[test]
    fn ring_axioms((p, q, r) in poly_triple()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p - &p, Polynomial::zero(p.n()));
    }

    #[test]
    fn operators_are_derivations((p, q, _) in poly_triple()) {
        let product = &p * &q;
        let left = apply_d(&product);
        let right = &(&apply_d(&p) * &q) + &(&p * &apply_d(&q));
        prop_assert_eq!(left, right);

        let left = apply_delta(&product);
        let right = &(&apply_delta(&p) * &q) + &(&p * &apply_delta(&q));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn operators_shift_the_weight(p in one_poly()) {
        if let Some((degree, weight)) = p.homogeneity() {
            let down = apply_d(&p);
            if let Some((d2, w2)) = down.homogeneity() {
                prop_assert_eq!((d2, w2), (degree, weight - 1));
            }
            let up = apply_delta(&p);
            if let Some((d2, w2)) = up.homogeneity() {
                prop_assert_eq!((d2, w2), (degree, weight + 1));
            }
        }
    }

    #[test]
    fn products_add_degrees_and_weights((p, q, _) in poly_triple()) {
        if let (Some((dp, wp)), Some((dq, wq))) = (p.homogeneity(), q.homogeneity()) {
            prop_assert_eq!((&p * &q).homogeneity(), Some((dp + dq, wp + wq)));
        }
    }

    #[test]
    fn partitions_and_monomials_are_inverse(sig in signature(), index in any::<prop::sample::Index>()) {
        let all = enumerate_box_partitions(sig.k, sig.n, sig.m as usize);
        prop_assert_eq!(num_bigint::BigUint::from(all.len()), count_p(sig.k, sig.n, sig.m));
        if !all.is_empty() {
            let lambda = &all[index.index(all.len())];
            let mono = lambda.monomial();
            prop_assert_eq!(mono.degree(), sig.k);
            prop_assert_eq!(mono.weight(), sig.m as usize);
            prop_assert_eq!(&mono.partition(sig.k).unwrap(), lambda);
        }
    }

    #[test]
    fn shear_expansion_always_telescopes(p in one_poly()) {
        prop_assert!(taylor_check(&p, ShearDirection::Horizontal).ok);
        prop_assert!(taylor_check(&p, ShearDirection::Vertical).ok);
    }

    #[test]
    fn membership_tests_agree(p in one_poly()) {
        prop_assert_eq!(
            is_semi_invariant(&p, SemiCheckMode::Operator),
            is_semi_invariant(&p, SemiCheckMode::Shear)
        );
    }

    #[test]
    fn polynomial_json_round_trips(p in one_poly()) {
        let encoded = serde_json::to_string(&p).unwrap();
        let decoded: Polynomial = serde_json::from_str(&encoded).unwrap();
        prop_assert_eq!(decoded, p);
    }
}
