//! Counting and enumerating partitions inside a `k x n` box.
//!
//! `p(k, n, m)` is the number of partitions of `m` with at most `k` parts,
//! each at most `n`; these are the generating-function coefficients of the
//! Gaussian binomial `binom(n + k, k)_q`.  Counting runs a dynamic program
//! over the part bound, feasible well past `n, k = 64`; enumeration is
//! reserved for desk-scale boxes.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::poly::BoxPartition;
use crate::{Error, Result};

/// All partitions of `m` in the `k x n` box, descending lexicographic.
pub fn enumerate_box_partitions(k: usize, n: usize, m: usize) -> Vec<BoxPartition> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    descend(k, n, m, &mut prefix, &mut out);
    out
}

fn descend(k: usize, n: usize, m: usize, prefix: &mut Vec<u32>, out: &mut Vec<BoxPartition>) {
    if m == 0 {
        out.push(
            BoxPartition::new(prefix.clone(), k, n).expect("prefix stays weakly decreasing"),
        );
        return;
    }
    let rows_left = k - prefix.len();
    if rows_left == 0 {
        return;
    }
    let bound = prefix.last().map_or(n, |&p| p as usize).min(m);
    let low = m.div_ceil(rows_left);
    let mut p = bound;
    while p >= low && p >= 1 {
        prefix.push(p as u32);
        descend(k, n, m - p, prefix, out);
        prefix.pop();
        p -= 1;
    }
}

/// `p(k, n, m)` by dynamic programming; zero outside `0 <= m <= nk`.
pub fn count_p(k: usize, n: usize, m: i64) -> BigUint {
    if m < 0 || m as usize > n * k {
        return BigUint::zero();
    }
    count_row(k, n).swap_remove(m as usize)
}

/// The full coefficient row `p(k, n, 0), ..., p(k, n, nk)`.
fn count_row(k: usize, n: usize) -> Vec<BigUint> {
    // dp[c][m] counts partitions of m into at most c parts, each at most v;
    // raising the bound v uses p(c, v, m) = p(c, v-1, m) + p(c-1, v, m-v).
    let width = n * k + 1;
    let mut dp: Vec<Vec<BigUint>> = (0..=k)
        .map(|_| {
            let mut row = vec![BigUint::zero(); width];
            row[0] = BigUint::one();
            row
        })
        .collect();
    for v in 1..=n {
        for c in 1..=k {
            for m in v..width.min(v * c + 1) {
                let carry = dp[c - 1][m - v].clone();
                dp[c][m] += carry;
            }
        }
    }
    dp.swap_remove(k)
}

/// Coefficients of the Gaussian binomial `binom(n + k, k)_q`, indexed by `m`.
///
/// The dynamic-programming row is cross-checked against the Pascal-type
/// q-recurrence before being returned.
pub fn gaussian_coefficient(n: usize, k: usize) -> Vec<BigUint> {
    let row = count_row(k, n);
    debug_assert_eq!(row, gaussian_by_recurrence(n, k));
    if cfg!(not(debug_assertions)) && n * k <= 1024 {
        assert_eq!(row, gaussian_by_recurrence(n, k), "q-recurrence cross-check");
    }
    row
}

/// `binom(a, b)_q` via `binom(a, b)_q = binom(a-1, b)_q + q^(a-b) binom(a-1, b-1)_q`.
fn gaussian_by_recurrence(n: usize, k: usize) -> Vec<BigUint> {
    let mut prev: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for a in 1..=n + k {
        let top = a.min(k);
        let mut row = Vec::with_capacity(top + 1);
        for b in 0..=top {
            if b == 0 || b == a {
                row.push(vec![BigUint::one()]);
                continue;
            }
            let mut coeffs = vec![BigUint::zero(); b * (a - b) + 1];
            for (m, c) in prev[b].iter().enumerate() {
                coeffs[m] += c;
            }
            for (m, c) in prev[b - 1].iter().enumerate() {
                coeffs[m + (a - b)] += c;
            }
            row.push(coeffs);
        }
        prev = row;
    }
    prev.swap_remove(k)
}

/// First difference `p(k, n, m) - p(k, n, m - 1)`, defined on `0 <= m <= nk/2`.
pub fn delta(k: usize, n: usize, m: i64) -> Result<BigInt> {
    if m < 0 || 2 * m as usize > n * k {
        return Err(Error::OutOfRange(format!(
            "delta is defined for 0 <= m <= {}, got {m}",
            n * k / 2
        )));
    }
    Ok(BigInt::from(count_p(k, n, m)) - BigInt::from(count_p(k, n, m - 1)))
}

/// The differences `delta(k, n, m)` for `m = 0, ..., nk/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTable {
    pub n: usize,
    pub k: usize,
    pub values: Vec<BigInt>,
}

pub fn delta_table(n: usize, k: usize) -> DeltaTable {
    let row = count_row(k, n);
    let values = (0..=n * k / 2)
        .map(|m| {
            let prev = if m == 0 { BigInt::zero() } else { BigInt::from(row[m - 1].clone()) };
            BigInt::from(row[m].clone()) - prev
        })
        .collect();
    DeltaTable { n, k, values }
}

/// Where `p(k, n, m) > p(k, n, m - 1)` fails on `2 <= m <= nk/2`, plus the
/// plain unimodality of the whole coefficient row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodalityReport {
    pub n: usize,
    pub k: usize,
    /// Values of `m` in `[2, nk/2]` with `p(k, n, m) <= p(k, n, m - 1)`.
    pub violations: Vec<usize>,
    pub strictly_unimodal: bool,
    pub unimodal: bool,
}

pub fn strict_unimodality_report(n: usize, k: usize) -> UnimodalityReport {
    let row = count_row(k, n);
    let violations: Vec<usize> = (2..=n * k / 2).filter(|&m| row[m] <= row[m - 1]).collect();
    let peak = (1..row.len())
        .find(|&m| row[m] < row[m - 1])
        .map_or(row.len() - 1, |m| m - 1);
    let unimodal = (peak + 1..row.len()).all(|m| row[m] <= row[m - 1]);
    UnimodalityReport {
        n,
        k,
        strictly_unimodal: violations.is_empty(),
        violations,
        unimodal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn parts(lambda: &BoxPartition) -> Vec<u32> {
        lambda.parts().to_vec()
    }

    #[test]
    fn enumeration_is_descending_lex() {
        let got: Vec<_> = enumerate_box_partitions(2, 2, 2).iter().map(parts).collect();
        assert_eq!(got, vec![vec![2, 0], vec![1, 1]]);

        let got: Vec<_> = enumerate_box_partitions(4, 4, 6).iter().map(parts).collect();
        assert_eq!(
            got,
            vec![
                vec![4, 2, 0, 0],
                vec![4, 1, 1, 0],
                vec![3, 3, 0, 0],
                vec![3, 2, 1, 0],
                vec![3, 1, 1, 1],
                vec![2, 2, 2, 0],
                vec![2, 2, 1, 1],
            ]
        );
    }

    #[test]
    fn enumeration_edge_cases() {
        assert_eq!(enumerate_box_partitions(0, 3, 0).len(), 1);
        assert!(enumerate_box_partitions(0, 3, 1).is_empty());
        assert!(enumerate_box_partitions(3, 2, 7).is_empty());
        assert_eq!(enumerate_box_partitions(3, 0, 0).len(), 1);
    }

    #[test]
    fn counts_match_enumeration() {
        for k in 0..=6 {
            for n in 0..=6 {
                for m in 0..=n * k + 1 {
                    let by_list = enumerate_box_partitions(k, n, m).len();
                    assert_eq!(
                        count_p(k, n, m as i64),
                        BigUint::from(by_list),
                        "p({k},{n},{m})"
                    );
                }
            }
        }
        assert_eq!(count_p(4, 4, 5), BigUint::from(5u32));
        assert_eq!(count_p(4, 4, 6), BigUint::from(7u32));
        assert!(count_p(4, 4, -1).is_zero());
        assert!(count_p(4, 4, 17).is_zero());
    }

    #[test]
    fn gaussian_rows() {
        let coeffs: Vec<u32> = gaussian_coefficient(2, 2).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(coeffs, vec![1, 1, 2, 1, 1]);
        let ones = gaussian_coefficient(1, 3);
        assert_eq!(ones, vec![BigUint::one(); 4]);
        assert_eq!(gaussian_coefficient(0, 5), vec![BigUint::one()]);
    }

    #[test]
    fn gaussian_row_agrees_with_recurrence_up_to_ten() {
        for n in 0..=10 {
            for k in 0..=10 {
                assert_eq!(count_row(k, n), gaussian_by_recurrence(n, k), "({n},{k})");
            }
        }
    }

    #[test]
    fn rows_are_symmetric_and_sum_to_binomial() {
        for n in 0..=8 {
            for k in 0..=8 {
                let row = count_row(k, n);
                let total: BigUint = row.iter().sum();
                assert_eq!(total, binomial(BigUint::from(n + k), BigUint::from(k)));
                for m in 0..row.len() {
                    assert_eq!(row[m], row[n * k - m], "p({k},{n},{m}) vs complement");
                }
            }
        }
    }

    #[test]
    fn conjugation_swaps_the_box() {
        for n in 0..=7 {
            for k in 0..=7 {
                for m in 0..=n * k {
                    assert_eq!(count_p(k, n, m as i64), count_p(n, k, m as i64));
                }
            }
        }
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(4, 4, 6).unwrap(), BigInt::from(2));
        assert_eq!(delta(2, 2, 0).unwrap(), BigInt::one());
        assert_eq!(delta_table(2, 2).values, vec![BigInt::one(), BigInt::zero(), BigInt::one()]);
        assert!(delta(2, 2, 3).is_err());
        assert!(delta(2, 2, -1).is_err());
    }

    #[test]
    fn delta_is_nonnegative_in_range() {
        for n in 1..=8 {
            for k in 1..=8 {
                for m in 0..=(n * k / 2) as i64 {
                    assert!(delta(k, n, m).unwrap() >= BigInt::zero(), "delta({k},{n},{m})");
                }
            }
        }
    }

    #[test]
    fn unimodality_reports() {
        let r = strict_unimodality_report(2, 2);
        assert!(r.strictly_unimodal && r.unimodal && r.violations.is_empty());

        // p(4, 4, m) = 1,1,2,3,5,5,7,7,8,...: plateaus at m = 5 and m = 7.
        let r = strict_unimodality_report(4, 4);
        assert_eq!(r.violations, vec![5, 7]);
        assert!(!r.strictly_unimodal);
        assert!(r.unimodal);
    }
}
