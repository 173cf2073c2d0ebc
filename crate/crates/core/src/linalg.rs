//! Exact dense linear algebra for the space computations.
//!
//! Elimination is fraction-free in the style of Bareiss: row updates divide
//! by the previous pivot, which is always exact over the integers, so entries
//! stay integral and growth stays polynomial.  Pivoting is deterministic,
//! the first nonzero entry scanning rows in order, and everything is
//! single-threaded; two runs produce identical output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// In-place fraction-free row echelon; returns the pivot columns.
pub fn echelon(rows: &mut [Vec<BigInt>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        let (upper, lower) = rows.split_at_mut(rank + 1);
        let lead = &upper[rank];
        for row in lower.iter_mut() {
            let factor = std::mem::replace(&mut row[col], BigInt::zero());
            for c in col + 1..cols {
                row[c] = (&pivot * &row[c] - &factor * &lead[c]) / &prev;
            }
        }
        prev = pivot;
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// Rank of an integer matrix.
pub fn rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    echelon(&mut rows).len()
}

/// Basis of the right null space of `rows`, one primitive integer vector per
/// free column, brought to reduced echelon form: each basis vector leads at
/// a distinct column with a positive entry, and that column is zero in every
/// other vector.
pub fn kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = rows.to_vec();
    debug_assert!(work.iter().all(|r| r.len() == cols));
    let pivots = echelon(&mut work);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }

    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Rational::zero(); cols];
        x[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate().rev() {
            let mut acc = Rational::zero();
            for c in p + 1..cols {
                if !work[r][c].is_zero() && !x[c].is_zero() {
                    acc += Rational::from_integer(work[r][c].clone()) * &x[c];
                }
            }
            x[p] = -acc / Rational::from_integer(work[r][p].clone());
        }
        basis.push(x);
    }
    rref(&mut basis);
    basis.iter().map(|row| primitive(row)).collect()
}

/// Gauss-Jordan over the rationals: rows end up with leading ones at
/// strictly increasing columns and zeros above and below each pivot.
pub fn rref(rows: &mut Vec<Vec<Rational>>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].clone().recip();
        for entry in rows[rank].iter_mut() {
            *entry *= &inv;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row.iter_mut().zip(&pivot) {
                *entry -= &factor * p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.retain(|row| row.iter().any(|e| !e.is_zero()));
}

/// Scales a rational vector to coprime integers with a positive leading entry.
pub fn primitive(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for e in row {
        lcm = lcm.lcm(e.denom());
    }
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|e| e.numer() * (&lcm / e.denom()))
        .collect();
    let mut gcd = BigInt::zero();
    for e in &ints {
        gcd = gcd.gcd(e);
    }
    if !gcd.is_zero() {
        for e in ints.iter_mut() {
            *e = &*e / &gcd;
        }
    }
    if let Some(lead) = ints.iter().find(|e| !e.is_zero()) {
        if lead.is_negative() {
            for e in ints.iter_mut() {
                *e = -&*e;
            }
        }
    }
    ints
}
