//! Semi-invariant subspaces carved out by exact linear algebra.
//!
//! `Q_n(k, m)` is spanned by the monomials of degree `k` and weight `m`,
//! i.e. by the partitions of `m` in the `k x n` box, so its dimension is
//! `p(k, n, m)`.  The semi-invariants `S_n(k, m)` are the kernel of `D`
//! there; by the dimension theorem that kernel has dimension
//! `delta(k, n, m) = p(k, n, m) - p(k, n, m - 1)` throughout `m <= nk/2`,
//! with `D` surjective one weight down and `Delta` injective one weight up.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg;
use crate::operators::{
    apply_d, apply_delta, shear_expand, Operator, ShearDirection, SpaceSignature,
};
use crate::partitions::{count_p, delta, enumerate_box_partitions};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::{Error, Result};

/// Guardrail on space dimensions, so a typo cannot silently request a
/// billion-column elimination.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Capacity {
    pub max_dim: usize,
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity { max_dim: 5000 }
    }
}

impl Capacity {
    pub fn new(max_dim: usize) -> Self {
        Capacity { max_dim }
    }

    /// Default limit, overridden by the `SEMIFORM_MAX_DIM` variable if set.
    pub fn from_env() -> Self {
        match std::env::var("SEMIFORM_MAX_DIM").ok().and_then(|v| v.parse().ok()) {
            Some(max_dim) => Capacity { max_dim },
            None => Capacity::default(),
        }
    }

    fn admit(&self, dim: &BigUint) -> Result<usize> {
        if *dim > BigUint::from(self.max_dim) {
            return Err(Error::Capacity {
                required: dim.to_usize().unwrap_or(usize::MAX),
                limit: self.max_dim,
            });
        }
        Ok(dim.to_usize().expect("dimension fits below the guardrail"))
    }
}

/// The monomial basis of `Q_n(k, m)` in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialBasis {
    pub sig: SpaceSignature,
    pub monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Coordinates of `p` in this basis; fails if a term falls outside.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<Rational>> {
        let index: BTreeMap<&Monomial, usize> =
            self.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut coords = vec![Rational::zero(); self.monomials.len()];
        for (mono, coeff) in p.terms() {
            match index.get(mono) {
                Some(&i) => coords[i] = coeff.clone(),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "term {mono} does not lie in {}",
                        self.sig
                    )))
                }
            }
        }
        Ok(coords)
    }
}

/// Monomials of `Q_n(k, m)`: the box partitions of `m`, largest first, which
/// is exactly the canonical term order.
pub fn basis_q(sig: &SpaceSignature, cap: &Capacity) -> Result<MonomialBasis> {
    let dim = count_p(sig.k, sig.n, sig.m);
    cap.admit(&dim)?;
    let monomials = if dim.is_zero() {
        Vec::new()
    } else {
        enumerate_box_partitions(sig.k, sig.n, sig.m as usize)
            .iter()
            .map(|lambda| lambda.monomial())
            .collect()
    };
    Ok(MonomialBasis { sig: *sig, monomials })
}

/// One shear operator as an integer matrix between weight-graded pieces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMapMatrix {
    pub op: Operator,
    pub domain: MonomialBasis,
    pub codomain: MonomialBasis,
    /// `columns[j]` lists `(row, entry)` pairs for the `j`-th domain monomial.
    pub columns: Vec<Vec<(usize, BigInt)>>,
}

/// Matrix of `D` (down one weight) or `Delta` (up one weight) out of
/// `Q_n(k, m)`, rows and columns in canonical order.
pub fn matrix_of(op: Operator, sig: &SpaceSignature, cap: &Capacity) -> Result<LinearMapMatrix> {
    let domain = basis_q(sig, cap)?;
    let image_m = match op {
        Operator::D => sig.m - 1,
        Operator::Delta => sig.m + 1,
    };
    let codomain = basis_q(&SpaceSignature::new(sig.n, sig.k, image_m), cap)?;
    let index: BTreeMap<&Monomial, usize> =
        codomain.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let columns = domain
        .monomials
        .iter()
        .map(|mono| {
            let image = match op {
                Operator::D => apply_d(&Polynomial::term(mono.clone(), Rational::one())),
                Operator::Delta => apply_delta(&Polynomial::term(mono.clone(), Rational::one())),
            };
            image
                .terms()
                .map(|(m, c)| {
                    debug_assert!(c.is_integer());
                    (*index.get(m).expect("image term lies in the codomain"), c.to_integer())
                })
                .collect()
        })
        .collect();
    Ok(LinearMapMatrix { op, domain, codomain, columns })
}

impl LinearMapMatrix {
    fn dense_rows(&self) -> Vec<Vec<BigInt>> {
        let mut rows = vec![vec![BigInt::zero(); self.columns.len()]; self.codomain.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                rows[*i][j] = v.clone();
            }
        }
        rows
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.dense_rows())
    }

    pub fn nullity(&self) -> usize {
        self.columns.len() - self.rank()
    }

    /// Kernel as polynomials: primitive integer coefficients, positive
    /// leading coefficient, reduced echelon over the canonical order.
    pub fn kernel(&self) -> Vec<Polynomial> {
        let vectors = linalg::kernel(&self.dense_rows(), self.columns.len());
        vectors
            .into_iter()
            .map(|v| {
                let mut p = Polynomial::zero(self.domain.sig.n);
                for (j, entry) in v.into_iter().enumerate() {
                    if !entry.is_zero() {
                        p.add_term(
                            self.domain.monomials[j].clone(),
                            Rational::from_integer(entry),
                        );
                    }
                }
                p
            })
            .collect()
    }
}

/// Echelonized basis of the semi-invariants `S_n(k, m) = ker D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemiInvariantBasis {
    pub sig: SpaceSignature,
    /// Whether `0 <= m <= nk/2`; outside it the kernel is still computed,
    /// but its dimension is no longer promised by the dimension theorem.
    pub in_sylvester_range: bool,
    pub elements: Vec<Polynomial>,
}

impl SemiInvariantBasis {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    /// Remainder of `p` after eliminating each basis leading monomial; zero
    /// exactly when `p` lies in the span.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut rest = p.clone();
        for b in &self.elements {
            let (lm, lc) = b.leading().expect("basis elements are nonzero");
            let c = rest.coeff(lm);
            if !c.is_zero() {
                rest = &rest - &b.scale(&(c / lc));
            }
        }
        rest
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }
}

/// Kernel of `D` on `Q_n(k, m)`.  Inside the half-box range the dimension is
/// checked against `delta(k, n, m)`; a mismatch would be a defect, not data.
pub fn semi_invariant_basis(sig: &SpaceSignature, cap: &Capacity) -> Result<SemiInvariantBasis> {
    let matrix = matrix_of(Operator::D, sig, cap)?;
    let elements = matrix.kernel();
    let in_range = sig.in_sylvester_range();
    if in_range {
        let expected = delta(sig.k, sig.n, sig.m)?;
        if BigInt::from(elements.len()) != expected {
            return Err(Error::Internal(format!(
                "kernel of D on {} has dimension {}, dimension theorem demands {}",
                sig,
                elements.len(),
                expected
            )));
        }
    }
    Ok(SemiInvariantBasis { sig: *sig, in_sylvester_range: in_range, elements })
}

/// How to decide membership in the kernel of the horizontal shear.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SemiCheckMode {
    /// Apply `D` and test for zero.
    Operator,
    /// Substitute the sheared coefficients and test that nothing moves.
    Shear,
}

/// Whether `p` is a semi-invariant; the two modes agree on every input.
pub fn is_semi_invariant(p: &Polynomial, mode: SemiCheckMode) -> bool {
    match mode {
        SemiCheckMode::Operator => apply_d(p).is_zero(),
        SemiCheckMode::Shear => {
            shear_expand(p, ShearDirection::Horizontal).coefficients.len() == 1
        }
    }
}

/// Everything the dimension theorem asserts about one space `Q_n(k, m)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SylvesterReport {
    pub sig: SpaceSignature,
    pub p_m: usize,
    pub p_m_minus_1: usize,
    pub delta: usize,
    pub d_rank: usize,
    pub d_nullity: usize,
    /// `D: Q(k, m) -> Q(k, m - 1)` hits everything.
    pub surjective: bool,
    pub delta_rank: usize,
    /// `Delta: Q(k, m - 1) -> Q(k, m)` kills nothing.
    pub injective: bool,
    /// `dim D^i(Q(k, m))` for `i = 0, ..., m + 1`; the last entry is zero.
    pub chain: Vec<usize>,
    /// Kernel dimension of each restriction `D: V_(i-1) -> V_i`.
    pub kernel_dims: Vec<usize>,
    /// `dim V_0` equals the sum of the kernel dimensions.
    pub telescoping_ok: bool,
}

/// Measures rank, nullity, injectivity and the full image chain at one
/// weight `0 <= m <= nk/2`.
pub fn sylvester_report(sig: &SpaceSignature, cap: &Capacity) -> Result<SylvesterReport> {
    if !sig.in_sylvester_range() {
        return Err(Error::OutOfRange(format!(
            "the dimension theorem covers 0 <= m <= nk/2 = {}; got m = {}",
            sig.n * sig.k / 2,
            sig.m
        )));
    }
    let m = sig.m;
    let d_matrix = matrix_of(Operator::D, sig, cap)?;
    let p_m = d_matrix.domain.len();
    let p_m_minus_1 = d_matrix.codomain.len();
    let d_rank = d_matrix.rank();
    let d_nullity = p_m - d_rank;

    let below = SpaceSignature::new(sig.n, sig.k, m - 1);
    let delta_matrix = matrix_of(Operator::Delta, &below, cap)?;
    let delta_rank = delta_matrix.rank();
    let injective = delta_rank == delta_matrix.domain.len();

    let mut chain = vec![p_m];
    let mut composed = d_matrix.columns.clone();
    let mut codomain_len = p_m_minus_1;
    chain.push(rank_of_columns(&composed, codomain_len));
    for j in (0..m).rev() {
        let step = matrix_of(Operator::D, &SpaceSignature::new(sig.n, sig.k, j), cap)?;
        composed = compose_columns(&step.columns, &composed);
        codomain_len = step.codomain.len();
        chain.push(rank_of_columns(&composed, codomain_len));
    }
    let kernel_dims: Vec<usize> = chain.windows(2).map(|w| w[0] - w[1]).collect();
    let telescoping_ok = kernel_dims.iter().sum::<usize>() == chain[0];

    let expected_delta = delta(sig.k, sig.n, m)?
        .to_usize()
        .expect("delta is nonnegative inside the half-box range");

    Ok(SylvesterReport {
        sig: *sig,
        p_m,
        p_m_minus_1,
        delta: expected_delta,
        d_rank,
        d_nullity,
        surjective: d_rank == p_m_minus_1,
        delta_rank,
        injective,
        chain,
        kernel_dims,
        telescoping_ok,
    })
}

fn rank_of_columns(columns: &[Vec<(usize, BigInt)>], rows: usize) -> usize {
    let mut dense = vec![vec![BigInt::zero(); columns.len()]; rows];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            dense[*i][j] = v.clone();
        }
    }
    linalg::rank(dense)
}

/// `a` after `b`: columns of `b` pushed through `a`.
fn compose_columns(
    a: &[Vec<(usize, BigInt)>],
    b: &[Vec<(usize, BigInt)>],
) -> Vec<Vec<(usize, BigInt)>> {
    b.iter()
        .map(|col| {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (x, v) in col {
                for (y, w) in &a[*x] {
                    let slot = acc.entry(*y).or_insert_with(BigInt::zero);
                    *slot += v * w;
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect()
}

/// A product (or `a_0`-padded) semi-invariant of degree `k1 + k2` and weight
/// `m`, witnessing that the top weight range grows additively.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdditivityWitness {
    pub polynomial: Polynomial,
    /// Weights `(m1, m2)` carried by the degree-`k1` and degree-`k2` factors.
    pub split: (i64, i64),
    pub factors: (Polynomial, Polynomial),
}

/// Builds a semi-invariant of degree `k1 + k2` and weight `m` as a product
/// of semi-invariants of degrees `k1` and `k2`, splitting the weight as the
/// additivity construction prescribes: the top weight splits into the two
/// half-box weights, high weights keep the first factor at its half box, low
/// weights hand the second factor a bare weight of 2, and `m = 2, 3` pad a
/// single factor with a power of `a_0`.  If a prescribed factor space is
/// empty the remaining splits are scanned before giving up.
pub fn additivity_witness(
    n: usize,
    k1: usize,
    k2: usize,
    m: i64,
    cap: &Capacity,
) -> Result<AdditivityWitness> {
    if n < 2 || k1 < 2 || k2 < 2 {
        return Err(Error::InvalidInput(format!(
            "need n, k1, k2 >= 2, got ({n}, {k1}, {k2})"
        )));
    }
    if !n.is_multiple_of(2) && !k1.is_multiple_of(2) && !k2.is_multiple_of(2) {
        return Err(Error::InvalidInput(
            "need at least one of n, k1, k2 even".into(),
        ));
    }
    let top = (n * (k1 + k2) / 2) as i64;
    if m < 2 || m > top {
        return Err(Error::OutOfRange(format!(
            "weight must satisfy 2 <= m <= {top}, got {m}"
        )));
    }

    if m <= 3 {
        // Pad a single factor with a_0 powers, preferring degree k1.
        for (ka, kb, first_is_k1) in [(k1, k2, true), (k2, k1, false)] {
            let half = (n * ka / 2) as i64;
            if m > half || !delta_positive(ka, n, m) {
                continue;
            }
            let inner = semi_invariant_basis(&SpaceSignature::new(n, ka, m), cap)?;
            let factor = inner.elements[0].clone();
            let padding = Polynomial::variable(n, 0).pow(kb as u32);
            let polynomial = &factor * &padding;
            let (factors, split) = if first_is_k1 {
                ((factor, padding), (m, 0))
            } else {
                ((padding, factor), (0, m))
            };
            debug_assert!(is_semi_invariant(&polynomial, SemiCheckMode::Operator));
            return Ok(AdditivityWitness { polynomial, split, factors });
        }
        return Err(Error::NoWitness(format!(
            "no semi-invariant of weight {m} exists at degree {k1} or {k2} for n = {n}"
        )));
    }

    let h1 = (n * k1 / 2) as i64;
    let h2 = (n * k2 / 2) as i64;
    let prescribed = if m == top {
        (h1, h2)
    } else if m >= h1 + 2 {
        (h1, m - h1)
    } else {
        (m - 2, 2)
    };
    let valid = |m1: i64, m2: i64| {
        (2..=h1).contains(&m1)
            && (2..=h2).contains(&m2)
            && delta_positive(k1, n, m1)
            && delta_positive(k2, n, m2)
    };
    let mut choice = None;
    if prescribed.0 + prescribed.1 == m && valid(prescribed.0, prescribed.1) {
        choice = Some(prescribed);
    } else {
        let mut m1 = h1.min(m - 2);
        while m1 >= 2 {
            if valid(m1, m - m1) {
                choice = Some((m1, m - m1));
                break;
            }
            m1 -= 1;
        }
    }
    let Some((m1, m2)) = choice else {
        return Err(Error::NoWitness(format!(
            "no split m1 + m2 = {m} with nonempty factor spaces at degrees ({k1}, {k2}) for n = {n}"
        )));
    };
    let left = semi_invariant_basis(&SpaceSignature::new(n, k1, m1), cap)?;
    let right = semi_invariant_basis(&SpaceSignature::new(n, k2, m2), cap)?;
    let f1 = left.elements[0].clone();
    let f2 = right.elements[0].clone();
    let polynomial = &f1 * &f2;
    debug_assert!(is_semi_invariant(&polynomial, SemiCheckMode::Operator));
    Ok(AdditivityWitness { polynomial, split: (m1, m2), factors: (f1, f2) })
}

fn delta_positive(k: usize, n: usize, m: i64) -> bool {
    delta(k, n, m).is_ok_and(|d| d.is_positive())
}
