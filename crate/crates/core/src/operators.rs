//! The two shear operators on form coefficients and their exact identities.
//!
//! With `a_0..a_n` the binomial-weighted coefficients of a degree-`n` form,
//!
//! ```text
//! D     = sum_{j=1..n} j   * a_{j-1} d/da_j      (weight -1)
//! Delta = sum_{j=0..n-1} (n-j) * a_{j+1} d/da_j  (weight +1)
//! ```
//!
//! `D` annihilates exactly the polynomials invariant under the horizontal
//! shear `x -> x + z y`, and `Delta` those invariant under the vertical one.
//! Substituting the sheared coefficients expands any polynomial as a Taylor
//! series in `z` whose `z^i` coefficient is `D^i/i!` (resp. `Delta^i/i!`)
//! applied to it; `taylor_check` verifies that term by term.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;

use crate::poly::{rat, BoxPartition, Monomial, Polynomial, Rational};
use crate::{Error, Result};

/// Which shear operator to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Operator {
    D,
    Delta,
}

/// Which coordinate shear to substitute.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShearDirection {
    Horizontal,
    Vertical,
}

/// The ambient space `Q_n(k, m)`: degree-`k` isobaric polynomials of weight
/// `m` in the coefficients of a degree-`n` form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpaceSignature {
    pub n: usize,
    pub k: usize,
    pub m: i64,
}

impl SpaceSignature {
    pub fn new(n: usize, k: usize, m: i64) -> Self {
        SpaceSignature { n, k, m }
    }

    /// The constant `c = nk - 2m` appearing in the commutator identities.
    pub fn c(&self) -> i64 {
        (self.n * self.k) as i64 - 2 * self.m
    }

    /// Whether `0 <= m <= nk/2`, the half-box range of the dimension theorem.
    pub fn in_sylvester_range(&self) -> bool {
        self.m >= 0 && 2 * self.m <= (self.n * self.k) as i64
    }
}

impl std::fmt::Display for SpaceSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Q_{}({}, {})", self.n, self.k, self.m)
    }
}

/// `D p`.  Each term loses one unit of weight; degree is preserved.
pub fn apply_d(p: &Polynomial) -> Polynomial {
    let n = p.n();
    let mut out = Polynomial::zero(n);
    for (mono, coeff) in p.terms() {
        for j in 1..=n {
            let e = mono.exp(j);
            if e == 0 {
                continue;
            }
            let mut exps = mono.exps().to_vec();
            exps[j] -= 1;
            exps[j - 1] += 1;
            out.add_term(Monomial::new(exps), coeff * rat((j as i64) * (e as i64)));
        }
    }
    out
}

/// `Delta p`.  Each term gains one unit of weight; degree is preserved.
pub fn apply_delta(p: &Polynomial) -> Polynomial {
    let n = p.n();
    let mut out = Polynomial::zero(n);
    for (mono, coeff) in p.terms() {
        for j in 0..n {
            let e = mono.exp(j);
            if e == 0 {
                continue;
            }
            let mut exps = mono.exps().to_vec();
            exps[j] -= 1;
            exps[j + 1] += 1;
            out.add_term(
                Monomial::new(exps),
                coeff * rat(((n - j) as i64) * (e as i64)),
            );
        }
    }
    out
}

/// `op^i p` by iterated application.
pub fn operator_power(op: Operator, i: usize, p: &Polynomial) -> Polynomial {
    let mut out = p.clone();
    for _ in 0..i {
        if out.is_zero() {
            break;
        }
        out = match op {
            Operator::D => apply_d(&out),
            Operator::Delta => apply_delta(&out),
        };
    }
    out
}

/// A polynomial in `z` whose coefficients are polynomials in `a_0..a_n`:
/// the result of substituting sheared coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShearExpansion {
    pub n: usize,
    pub direction: ShearDirection,
    /// `coefficients[i]` multiplies `z^i`; trailing zeros are trimmed and the
    /// `z^0` entry, always present, equals the input polynomial.
    pub coefficients: Vec<Polynomial>,
}

/// Substitutes the sheared coefficients into `p` and collects powers of `z`.
///
/// Horizontal sends `a_i` to `sum_j C(i, j) a_{i-j} z^j`, vertical sends
/// `a_i` to `sum_j C(n-i, j) a_{i+j} z^j`.
pub fn shear_expand(p: &Polynomial, direction: ShearDirection) -> ShearExpansion {
    let n = p.n();
    // Image of each variable as a polynomial in z.
    let images: Vec<Vec<Polynomial>> = (0..=n)
        .map(|i| {
            let reach = match direction {
                ShearDirection::Horizontal => i,
                ShearDirection::Vertical => n - i,
            };
            (0..=reach)
                .map(|j| {
                    let target = match direction {
                        ShearDirection::Horizontal => i - j,
                        ShearDirection::Vertical => i + j,
                    };
                    let binom = binomial(reach as u128, j as u128);
                    Polynomial::term(
                        Monomial::variable(n, target),
                        Rational::from_integer(BigInt::from(binom)),
                    )
                })
                .collect()
        })
        .collect();

    let mut total: Vec<Polynomial> = vec![Polynomial::zero(n)];
    for (mono, coeff) in p.terms() {
        let mut acc = vec![Polynomial::constant(n, coeff.clone())];
        for (i, image) in images.iter().enumerate() {
            for _ in 0..mono.exp(i) {
                acc = z_mul(&acc, image, n);
            }
        }
        if total.len() < acc.len() {
            total.resize(acc.len(), Polynomial::zero(n));
        }
        for (slot, part) in total.iter_mut().zip(acc) {
            *slot = &*slot + &part;
        }
    }
    while total.len() > 1 && total.last().is_some_and(Polynomial::is_zero) {
        total.pop();
    }
    ShearExpansion { n, direction, coefficients: total }
}

fn z_mul(a: &[Polynomial], b: &[Polynomial], n: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(n); a.len() + b.len() - 1];
    for (s, pa) in a.iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (t, pb) in b.iter().enumerate() {
            out[s + t] = &out[s + t] + &(pa * pb);
        }
    }
    out
}

/// Outcome of comparing a shear expansion against operator powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorReport {
    pub direction: ShearDirection,
    pub ok: bool,
    /// Number of `z` powers compared, through the longer of the two sides.
    pub compared: usize,
    pub first_mismatch: Option<usize>,
}

/// Checks `coefficient of z^i` = `op^i(p) / i!` for every `i`, with `op`
/// chosen by the shear direction.
pub fn taylor_check(p: &Polynomial, direction: ShearDirection) -> TaylorReport {
    let op = match direction {
        ShearDirection::Horizontal => Operator::D,
        ShearDirection::Vertical => Operator::Delta,
    };
    let expansion = shear_expand(p, direction);
    let (compared, first_mismatch) = series_mismatch(p, &expansion.coefficients, op);
    TaylorReport { direction, ok: first_mismatch.is_none(), compared, first_mismatch }
}

/// Compares `coefficients[i]` with `op^i(p) / i!` until both sides run out;
/// returns the number of powers compared and the first differing one.
pub(crate) fn series_mismatch(
    p: &Polynomial,
    coefficients: &[Polynomial],
    op: Operator,
) -> (usize, Option<usize>) {
    let mut derivative = p.clone();
    let mut factorial = Rational::one();
    let mut first_mismatch = None;
    let mut i = 0;
    loop {
        let series_side = coefficients
            .get(i)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(p.n()));
        let operator_side = derivative.scale(&factorial.recip());
        if series_side != operator_side && first_mismatch.is_none() {
            first_mismatch = Some(i);
        }
        i += 1;
        if i >= coefficients.len() && derivative.is_zero() {
            break;
        }
        derivative = match op {
            Operator::D => apply_d(&derivative),
            Operator::Delta => apply_delta(&derivative),
        };
        factorial *= rat(i as i64);
    }
    (i, first_mismatch)
}

/// `D Delta^i(a_lambda) - Delta^i D(a_lambda) - i(c - i + 1) Delta^(i-1)(a_lambda)`,
/// which is identically zero.  `c = nk - 2m` for the box holding `lambda`.
pub fn hilbert_commutator_residual(lambda: &BoxPartition, i: usize) -> Polynomial {
    assert!(i >= 1, "the commutator identity needs i >= 1");
    let sig = signature_of(lambda);
    let a_lambda = Polynomial::term(lambda.monomial(), Rational::one());
    let delta_i = operator_power(Operator::Delta, i, &a_lambda);
    let lhs = &apply_d(&delta_i) - &operator_power(Operator::Delta, i, &apply_d(&a_lambda));
    let factor = rat(i as i64) * rat(sig.c() - i as i64 + 1);
    let rhs = operator_power(Operator::Delta, i - 1, &a_lambda).scale(&factor);
    &lhs - &rhs
}

/// `D^i Delta(a_lambda) - Delta D^i(a_lambda) - i(c + i - 1) D^(i-1)(a_lambda)`,
/// the mirror identity, also identically zero.
pub fn second_hilbert_residual(lambda: &BoxPartition, i: usize) -> Polynomial {
    assert!(i >= 1, "the commutator identity needs i >= 1");
    let sig = signature_of(lambda);
    let a_lambda = Polynomial::term(lambda.monomial(), Rational::one());
    let lhs = &operator_power(Operator::D, i, &apply_delta(&a_lambda))
        - &apply_delta(&operator_power(Operator::D, i, &a_lambda));
    let factor = rat(i as i64) * rat(sig.c() + i as i64 - 1);
    let rhs = operator_power(Operator::D, i - 1, &a_lambda).scale(&factor);
    &lhs - &rhs
}

/// Signature of the space a partition's monomial lives in: `n` from the box
/// width, `k` from the row count, `m` from the size.
pub fn signature_of(lambda: &BoxPartition) -> SpaceSignature {
    SpaceSignature::new(lambda.box_n(), lambda.rows(), lambda.size() as i64)
}

/// For a semi-invariant `I` the commutator identity collapses to
/// `D Delta^i(I) = i(c - i + 1) Delta^(i-1)(I)`; checks it at one `i`.
///
/// Rejects input that is not homogeneous-isobaric matching `sig`, sits above
/// the half-box, or is not annihilated by `D`.
pub fn cayley_check(p: &Polynomial, sig: &SpaceSignature, i: usize) -> Result<bool> {
    assert!(i >= 1, "the collapsed identity needs i >= 1");
    if p.n() != sig.n {
        return Err(Error::ContextMismatch { expected: sig.n, actual: p.n() });
    }
    match p.homogeneity() {
        Some((k, m)) if k == sig.k && m as i64 == sig.m => {}
        got => {
            return Err(Error::NotHomogeneous(format!(
                "expected degree {} and weight {}, got {:?}",
                sig.k, sig.m, got
            )))
        }
    }
    if !sig.in_sylvester_range() {
        return Err(Error::OutOfRange(format!(
            "2m = {} exceeds nk = {}",
            2 * sig.m,
            sig.n * sig.k
        )));
    }
    if !apply_d(p).is_zero() {
        return Err(Error::NotSemiInvariant);
    }
    let lhs = apply_d(&operator_power(Operator::Delta, i, p));
    let factor = rat(i as i64) * rat(sig.c() - i as i64 + 1);
    let rhs = operator_power(Operator::Delta, i - 1, p).scale(&factor);
    Ok(lhs == rhs)
}
