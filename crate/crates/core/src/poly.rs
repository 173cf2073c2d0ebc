//! Sparse polynomials in the form coefficients `a_0..a_n`.
//!
//! A binary form of degree `n` has `n + 1` coefficients, so every monomial
//! carries a full exponent vector of that length; we call `n` the *context*
//! and refuse to mix contexts.  Coefficients are arbitrary-precision
//! rationals, kept reduced with positive denominators by `num-rational`.
//!
//! Monomials of degree `k` correspond bijectively to partitions inside a
//! `k x n` box: the monomial `a_4 a_2 a_1 a_0` is the partition `(4, 2, 1, 0)`
//! read as row lengths.  The canonical term order compares monomials through
//! that correspondence, larger partitions first in lexicographic order, e.g.
//! `(4,2)` before `(4,1,1)` before `(3,3)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Exact rational scalar used for every coefficient in the crate.
pub type Rational = num_rational::BigRational;

/// The integer `v` as a rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// The fraction `num/den` as a reduced rational.  Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((num, den)) => (num, den),
        None => (s, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `num/den`, the form `parse_rational` accepts.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// A power product of the variables `a_0..a_n`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// Builds a monomial from its exponent vector; the context is `len - 1`.
    /// Panics on an empty vector.
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(!exps.is_empty(), "exponent vector must cover a_0");
        Monomial { exps }
    }

    /// The constant monomial `1` in context `n`.
    pub fn unit(n: usize) -> Self {
        Monomial { exps: vec![0; n + 1] }
    }

    /// The single variable `a_i` in context `n`.
    pub fn variable(n: usize, i: usize) -> Self {
        assert!(i <= n, "a_{i} does not exist in context n={n}");
        let mut exps = vec![0; n + 1];
        exps[i] = 1;
        Monomial { exps }
    }

    /// Largest variable index, i.e. the degree of the underlying binary form.
    pub fn n(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Total degree, the number of box rows of the associated partition.
    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    /// Isobaric weight `sum i * exp(i)`, the size of the associated partition.
    pub fn weight(&self) -> usize {
        self.exps.iter().enumerate().map(|(i, &e)| i * e as usize).sum()
    }

    /// Product of two monomials from the same context.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n(), "context mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a + b)
            .collect();
        Monomial { exps }
    }

    /// The partition whose row lengths are this monomial's variable indices,
    /// zero rows included.  `k` must equal the degree.
    pub fn partition(&self, k: usize) -> Result<BoxPartition> {
        let degree = self.degree();
        if degree != k {
            return Err(Error::InvalidInput(format!(
                "monomial has degree {degree}, expected {k} rows"
            )));
        }
        let mut parts = Vec::with_capacity(k);
        for j in (0..self.exps.len()).rev() {
            for _ in 0..self.exps[j] {
                parts.push(j as u32);
            }
        }
        BoxPartition::new(parts, k, self.n())
    }
}

/// Canonical term order: descending lexicographic on associated partitions.
/// Comparing exponent vectors from the highest variable down realizes it.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len(), "context mismatch");
        self.exps.iter().rev().cmp(other.exps.iter().rev())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "a{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A partition drawn inside a `k x n` box: at most `k` rows, each of length
/// at most `n`.  Rows are stored padded with zeros to exactly `k` entries,
/// so `(4, 2)` in a 4 x 4 box is kept as `(4, 2, 0, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BoxPartition {
    parts: Vec<u32>,
    box_n: usize,
}

impl BoxPartition {
    /// Validates weakly decreasing rows fitting the box, then pads to `k` rows.
    pub fn new(parts: Vec<u32>, k: usize, n: usize) -> Result<Self> {
        if parts.len() > k {
            return Err(Error::InvalidInput(format!(
                "{} rows exceed the box height {k}",
                parts.len()
            )));
        }
        for (i, &p) in parts.iter().enumerate() {
            if p as usize > n {
                return Err(Error::InvalidInput(format!(
                    "row {i} has length {p}, box width is {n}"
                )));
            }
            if i > 0 && parts[i - 1] < p {
                return Err(Error::InvalidInput(format!(
                    "rows must be weakly decreasing: row {i} ({p}) exceeds row {} ({})",
                    i - 1,
                    parts[i - 1]
                )));
            }
        }
        let mut parts = parts;
        parts.resize(k, 0);
        Ok(BoxPartition { parts, box_n: n })
    }

    /// Box height `k`.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Box width `n`.
    pub fn box_n(&self) -> usize {
        self.box_n
    }

    /// Row lengths, zero rows included.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts[i]
    }

    /// Number of cells, the weight `m`.
    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// The monomial `a_{r_1} a_{r_2} ...` over this partition's rows;
    /// zero rows contribute `a_0` factors.
    pub fn monomial(&self) -> Monomial {
        let mut exps = vec![0u32; self.box_n + 1];
        for &p in &self.parts {
            exps[p as usize] += 1;
        }
        Monomial::new(exps)
    }

    /// Conjugate partition, living in the transposed `n x k` box.
    pub fn conjugate(&self) -> BoxPartition {
        let k = self.parts.len();
        let parts = (0..self.box_n)
            .map(|j| self.parts.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        BoxPartition::new(parts, self.box_n, k).expect("conjugate stays in the box")
    }

    /// Complement inside the box, reversed to stay weakly decreasing.
    pub fn complement(&self) -> BoxPartition {
        let parts = self
            .parts
            .iter()
            .rev()
            .map(|&p| self.box_n as u32 - p)
            .collect();
        BoxPartition::new(parts, self.parts.len(), self.box_n)
            .expect("complement stays in the box")
    }
}

impl fmt::Display for BoxPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A sparse polynomial in `a_0..a_n` with rational coefficients.
///
/// Values are immutable in spirit: arithmetic returns fresh polynomials and
/// never stores zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    /// The zero polynomial in context `n`.
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(n);
        p.add_term(Monomial::unit(n), c);
        p
    }

    /// The single variable `a_i`.
    pub fn variable(n: usize, i: usize) -> Self {
        Polynomial::term(Monomial::variable(n, i), Rational::one())
    }

    /// The polynomial `c * m`.
    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(m.n());
        p.add_term(m, c);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `m`, zero when absent.
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.n(), self.n, "context mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in canonical order, largest monomial first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    /// Leading term in canonical order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn check_context(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ContextMismatch { expected: self.n, actual: other.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_context(other)?;
        let mut out = Polynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        Polynomial { n: self.n, terms }
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.n, Rational::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `Some((degree, weight))` when every term shares both, `None` otherwise
    /// and for the zero polynomial.
    pub fn homogeneity(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let (k, m) = (first.degree(), first.weight());
        for mono in it {
            if mono.degree() != k || mono.weight() != m {
                return None;
            }
        }
        Some((k, m))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("context mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("context mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("context mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() && m.degree() > 0 {
                write!(f, "{m}")?;
            } else if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    n: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            n: self.n,
            terms: self
                .terms()
                .map(|(m, c)| TermRepr {
                    exponents: m.exps().to_vec(),
                    coeff: format_rational(c),
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut p = Polynomial::zero(repr.n);
        for (i, term) in repr.terms.iter().enumerate() {
            if term.exponents.len() != repr.n + 1 {
                return Err(D::Error::custom(format!(
                    "term {i}: expected {} exponents for n={}, got {}",
                    repr.n + 1,
                    repr.n,
                    term.exponents.len()
                )));
            }
            let c = parse_rational(&term.coeff)
                .map_err(|e| D::Error::custom(format!("term {i}: {e}")))?;
            p.add_term(Monomial::new(term.exponents.clone()), c);
        }
        Ok(p)
    }
}
