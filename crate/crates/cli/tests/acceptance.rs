//! Acceptance checks: one test per criterion, each asserting its result and
//! its wall-clock budget. Run with `--nocapture` to see per-criterion timing.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{Signed, ToPrimitive};
use semiform::diagrams::{commutator_census, oracle_weight_sum, MarkMode};
use semiform::operators::{
    apply_d, hilbert_commutator_residual, operator_power, second_hilbert_residual, shear_expand,
    taylor_check, Operator, ShearDirection, SpaceSignature,
};
use semiform::partitions::{
    count_p, delta, enumerate_box_partitions, gaussian_coefficient, strict_unimodality_report,
};
use semiform::poly::{rat, BoxPartition, Monomial, Polynomial};
use semiform::sample::{random_element, seeded_rng};
use semiform::spaces::{
    additivity_witness, is_semi_invariant, semi_invariant_basis, sylvester_report, Capacity,
    SemiCheckMode,
};
use semiform::Error;

fn finish(name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "{name} took {elapsed:?}, budget {budget:?}"
    );
    println!("{name}: PASS ({elapsed:?})");
}

fn poly(n: usize, terms: &[(i64, &[u32])]) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for (c, exps) in terms {
        p.add_term(Monomial::new(exps.to_vec()), rat(*c));
    }
    p
}

#[test]
fn criterion_01_operator_powers_on_a_cubic() {
    let start = Instant::now();
    let a0_cubed = poly(3, &[(1, &[3, 0, 0, 0])]);
    let delta3 = operator_power(Operator::Delta, 3, &a0_cubed);
    let expected = poly(3, &[(18, &[2, 0, 0, 1]), (324, &[1, 1, 1, 0]), (162, &[0, 3, 0, 0])]);
    assert_eq!(delta3, expected);
    let d3 = operator_power(Operator::D, 3, &delta3);
    assert_eq!(d3, poly(3, &[(3024, &[3, 0, 0, 0])]));
    finish("criterion 1 (operator powers)", start, Duration::from_secs(1));
}

#[test]
fn criterion_02_shear_expansion_of_a_variable() {
    let start = Instant::now();

    let horizontal = shear_expand(&Polynomial::variable(3, 3), ShearDirection::Horizontal);
    let expected_h = [
        poly(3, &[(1, &[0, 0, 0, 1])]),
        poly(3, &[(3, &[0, 0, 1, 0])]),
        poly(3, &[(3, &[0, 1, 0, 0])]),
        poly(3, &[(1, &[1, 0, 0, 0])]),
    ];
    assert_eq!(horizontal.coefficients, expected_h);

    let vertical = shear_expand(&Polynomial::variable(6, 3), ShearDirection::Vertical);
    let expected_v = [
        poly(6, &[(1, &[0, 0, 0, 1, 0, 0, 0])]),
        poly(6, &[(3, &[0, 0, 0, 0, 1, 0, 0])]),
        poly(6, &[(3, &[0, 0, 0, 0, 0, 1, 0])]),
        poly(6, &[(1, &[0, 0, 0, 0, 0, 0, 1])]),
    ];
    assert_eq!(vertical.coefficients, expected_v);

    finish("criterion 2 (shear expansion)", start, Duration::from_secs(1));
}

#[test]
fn criterion_03_quartic_semi_invariants_of_weight_six() {
    let start = Instant::now();
    let sig = SpaceSignature::new(4, 4, 6);
    let basis = semi_invariant_basis(&sig, &Capacity::default()).unwrap();
    assert_eq!(basis.dimension(), 2);

    let i1 = poly(
        4,
        &[
            (3, &[0, 2, 2, 0, 0]),
            (-4, &[0, 3, 0, 1, 0]),
            (-2, &[1, 1, 1, 1, 0]),
            (3, &[2, 0, 0, 2, 0]),
            (4, &[1, 2, 0, 0, 1]),
            (-4, &[2, 0, 1, 0, 1]),
        ],
    );
    let i2 = poly(
        4,
        &[
            (1, &[1, 0, 3, 0, 0]),
            (-2, &[1, 1, 1, 1, 0]),
            (1, &[2, 0, 0, 2, 0]),
            (1, &[1, 2, 0, 0, 1]),
            (-1, &[2, 0, 1, 0, 1]),
        ],
    );
    for fixture in [&i1, &i2] {
        assert!(basis.reduce(fixture).is_zero(), "fixture outside the computed span");
        assert!(apply_d(fixture).is_zero(), "fixture not annihilated");
        assert!(taylor_check(fixture, ShearDirection::Horizontal).ok);
        assert!(taylor_check(fixture, ShearDirection::Vertical).ok);
    }
    finish("criterion 3 (weight-six basis)", start, Duration::from_secs(5));
}

#[test]
fn criterion_04_dimension_theorem_grid() {
    let start = Instant::now();
    let cap = Capacity::default();
    let mut spaces = 0usize;
    for n in 1..=6 {
        for k in 1..=6 {
            for m in 0..=((n * k / 2) as i64) {
                let sig = SpaceSignature::new(n, k, m);
                let report = sylvester_report(&sig, &cap).unwrap();
                let label = format!("n={n}, k={k}, m={m}");
                let expected_delta =
                    delta(k, n, m).unwrap().to_usize().expect("in range");
                let expected_below =
                    count_p(k, n, m - 1).to_usize().expect("desk scale");
                assert_eq!(report.d_nullity, expected_delta, "nullity at {label}");
                assert_eq!(report.d_rank, expected_below, "rank at {label}");
                assert!(report.surjective, "D not onto at {label}");
                assert!(report.injective, "Delta not injective at {label}");
                assert!(report.telescoping_ok, "telescoping fails at {label}");
                assert_eq!(
                    report.kernel_dims.iter().sum::<usize>(),
                    report.chain[0],
                    "kernel sum at {label}"
                );
                spaces += 1;
            }
        }
    }
    assert_eq!(spaces, 252);
    finish("criterion 4 (dimension grid)", start, Duration::from_secs(300));
}

#[test]
fn criterion_05_commutator_identities_everywhere() {
    let start = Instant::now();
    let mut checked = 0usize;
    for n in 1..=4 {
        for k in 1..=4 {
            for m in 0..=(n * k) {
                for lambda in enumerate_box_partitions(k, n, m) {
                    for i in 1..=(m + 2) {
                        assert!(
                            hilbert_commutator_residual(&lambda, i).is_zero(),
                            "first identity fails at {lambda}, i={i}"
                        );
                        assert!(
                            second_hilbert_residual(&lambda, i).is_zero(),
                            "second identity fails at {lambda}, i={i}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert_eq!(checked, 1785, "grid size drifted");
    finish("criterion 5 (commutator identities)", start, Duration::from_secs(120));
}

#[test]
fn criterion_06_taylor_reconstruction_of_random_elements() {
    let start = Instant::now();
    let mut rng = seeded_rng(42);
    for idx in 0..200usize {
        let n = 1 + idx % 5;
        let k = 1 + (idx / 5) % 5;
        let m = (idx % (n * k + 1)) as i64;
        let p = random_element(&SpaceSignature::new(n, k, m), &mut rng);
        for direction in [ShearDirection::Horizontal, ShearDirection::Vertical] {
            let report = taylor_check(&p, direction);
            assert!(report.ok, "sample {idx} fails {direction:?}: {report:?}");
        }
    }
    finish("criterion 6 (random shear checks)", start, Duration::from_secs(60));
}

#[test]
fn criterion_07_diagram_oracle_and_census() {
    let start = Instant::now();
    for n in 1..=3 {
        for k in 1..=3 {
            for m in 0..=(n * k) {
                for lambda in enumerate_box_partitions(k, n, m) {
                    let a_lambda = Polynomial::term(lambda.monomial(), rat(1));
                    for i in 0..=m {
                        assert_eq!(
                            oracle_weight_sum(&lambda, i, MarkMode::Minus).unwrap(),
                            scaled_power(Operator::D, i, &a_lambda),
                            "minus oracle at {lambda}, i={i}"
                        );
                    }
                    for i in 0..=(n * k - m) {
                        assert_eq!(
                            oracle_weight_sum(&lambda, i, MarkMode::Plus).unwrap(),
                            scaled_power(Operator::Delta, i, &a_lambda),
                            "plus oracle at {lambda}, i={i}"
                        );
                    }
                    let c = n as i64 * k as i64 - 2 * m as i64;
                    for i in 1..=(n * k - m + 1) {
                        let census = commutator_census(&lambda, i).unwrap();
                        assert!(census.ok(), "census fails at {lambda}, i={i}");
                        let i = i as i64;
                        assert_eq!(census.pm_factor, i * (c + m as i64 - i + 1));
                        assert_eq!(census.mp_factor, i * m as i64);
                        assert_eq!(census.difference_factor, i * (c - i + 1));
                    }
                }
            }
        }
    }

    let lambda = BoxPartition::new(vec![4, 2, 1, 0], 4, 5).unwrap();
    let census = commutator_census(&lambda, 3).unwrap();
    assert_eq!(census.pm_factor, 33);
    assert_eq!(census.mp_factor, 21);
    assert_eq!(census.difference_factor, 12);
    assert!(census.ok());

    finish("criterion 7 (diagram oracle)", start, Duration::from_secs(120));
}

fn scaled_power(op: Operator, i: usize, p: &Polynomial) -> Polynomial {
    let factorial: i64 = (1..=i as i64).product();
    operator_power(op, i, p).scale(&(rat(1) / rat(factorial)))
}

#[test]
fn criterion_08_unimodality_and_symmetry() {
    let start = Instant::now();
    for (n, k) in [(8, 8), (8, 9), (9, 8)] {
        let report = strict_unimodality_report(n, k);
        assert!(report.violations.is_empty(), "({n}, {k}): {:?}", report.violations);
        assert!(report.strictly_unimodal);
    }
    for n in 1..=12 {
        for k in 1..=12 {
            let coeffs = gaussian_coefficient(n, k);
            assert_eq!(coeffs.len(), n * k + 1);
            for m in 0..coeffs.len() {
                assert_eq!(coeffs[m], coeffs[n * k - m], "asymmetry at n={n}, k={k}, m={m}");
            }
        }
    }
    finish("criterion 8 (unimodality, symmetry)", start, Duration::from_secs(10));
}

#[test]
fn criterion_09_additive_weight_witnesses() {
    let start = Instant::now();
    let cap = Capacity::default();
    let mut found = 0usize;
    for n in 2..=4usize {
        for k1 in 2..=4usize {
            for k2 in 2..=4usize {
                let all_odd = n % 2 == 1 && k1 % 2 == 1 && k2 % 2 == 1;
                let top = (n * (k1 + k2) / 2) as i64;
                for m in 2..=top {
                    let label = format!("n={n}, k1={k1}, k2={k2}, m={m}");
                    match additivity_witness(n, k1, k2, m, &cap) {
                        Ok(witness) => {
                            assert!(!all_odd, "{label} should have been refused");
                            verify_witness(&witness, n, k1, k2, m, &label);
                            found += 1;
                        }
                        Err(Error::InvalidInput(_)) => assert!(all_odd, "{label} refused"),
                        Err(Error::NoWitness(_)) => assert!(
                            !any_split_exists(n, k1, k2, m),
                            "{label}: witness missed an existing split"
                        ),
                        Err(other) => panic!("{label}: {other}"),
                    }
                }
            }
        }
    }
    assert!(found > 100, "grid unexpectedly sparse: {found}");

    for (n, k1, k2, m) in [(2, 2, 2, 2), (2, 2, 2, 4), (4, 4, 4, 12)] {
        let witness = additivity_witness(n, k1, k2, m, &cap).unwrap();
        verify_witness(&witness, n, k1, k2, m, "pinned case");
    }
    finish("criterion 9 (additive witnesses)", start, Duration::from_secs(60));
}

fn verify_witness(
    witness: &semiform::spaces::AdditivityWitness,
    n: usize,
    k1: usize,
    k2: usize,
    m: i64,
    label: &str,
) {
    let p = &witness.polynomial;
    assert!(!p.is_zero(), "{label}: zero witness");
    assert_eq!(p.n(), n, "{label}: wrong context");
    for (monomial, _) in p.terms() {
        assert_eq!(monomial.degree(), k1 + k2, "{label}: inhomogeneous");
        assert_eq!(monomial.weight() as i64, m, "{label}: anisobaric");
    }
    assert_eq!(&witness.factors.0 * &witness.factors.1, *p, "{label}: factors");
    assert_eq!(witness.split.0 + witness.split.1, m, "{label}: split sum");
    assert!(is_semi_invariant(p, SemiCheckMode::Operator), "{label}: D check");
    assert!(is_semi_invariant(p, SemiCheckMode::Shear), "{label}: shear check");
}

fn any_split_exists(n: usize, k1: usize, k2: usize, m: i64) -> bool {
    let positive =
        |k: usize, w: i64| w <= (n * k / 2) as i64 && delta(k, n, w).unwrap().is_positive();
    if m <= 3 {
        return positive(k1, m) || positive(k2, m);
    }
    let h1 = (n * k1 / 2) as i64;
    (2..=h1.min(m - 2)).any(|m1| m - m1 >= 2 && positive(k1, m1) && positive(k2, m - m1))
}

#[test]
fn criterion_10_byte_identical_reruns() {
    let start = Instant::now();
    let commands: &[&[&str]] = &[
        &["gauss", "--n", "6", "--k", "6", "--json"],
        &["basis", "--n", "4", "--k", "4", "--m", "6", "--json"],
        &["suite", "sylvester", "--max-n", "4", "--max-k", "4", "--json"],
        &["suite", "hilbert", "--box", "3x3", "--max-i", "4", "--json"],
        &["suite", "taylor", "--count", "50", "--seed", "0", "--json"],
        &["suite", "diagrams", "--max-n", "3", "--max-k", "3", "--max-i", "3", "--json"],
        &["suite", "unimodality", "--n", "8", "--k", "8", "--json"],
    ];
    for args in commands {
        let run = || {
            let out = Command::new(env!("CARGO_BIN_EXE_semiform"))
                .args(*args)
                .output()
                .expect("binary runs");
            assert!(out.status.success(), "{args:?} failed: {out:?}");
            out.stdout
        };
        let first = run();
        assert!(!first.is_empty());
        assert_eq!(first, run(), "nondeterministic stdout for {args:?}");
    }
    finish("criterion 10 (determinism)", start, Duration::from_secs(120));
}
