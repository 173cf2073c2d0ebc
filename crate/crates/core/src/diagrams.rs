//! Marked-diagram oracle for the shear operators.
//!
//! Draw a partition `lambda` inside its `k x n` box.  Putting `i` minus marks
//! on distinct shaded cells and reading row `r` as the variable
//! `a_(lambda_r - marks_r)` makes the sum over all markings equal
//! `D^i(a_lambda) / i!`; plus marks on distinct hollow cells likewise give
//! `Delta^i(a_lambda) / i!`.  The enumeration here is deliberately
//! brute-force so it can serve as an independent witness for the operator
//! module; inputs are capped at 25 box cells and partitions of size 12.
//!
//! `commutator_census` recounts the two sides of the commutator identity
//! `D Delta^i - Delta^i D = i(c - i + 1) Delta^(i-1)` on `a_lambda` as
//! placement sequences: `i - 1` ordered plus marks followed by a
//! distinguished mark that is either one of `i` labels on a remaining hollow
//! cell or one of `i` labels on an original cell of `lambda`.

use itertools::Itertools;
use num_traits::One;

use crate::operators::{operator_power, Operator};
use crate::poly::{rat, BoxPartition, Monomial, Polynomial, Rational};
use crate::{Error, Result};

const MAX_BOX_CELLS: usize = 25;
const MAX_SHAPE_SIZE: usize = 12;
const MAX_SEQUENCES: u64 = 5_000_000;

/// Which kind of mark a diagram carries.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MarkMode {
    /// Marks sit on shaded cells and lower row values.
    Minus,
    /// Marks sit on hollow cells and raise row values.
    Plus,
}

/// A partition with marks on distinct cells, `(row, column)` zero-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemiDiagram {
    pub shape: BoxPartition,
    pub minus_cells: Vec<(usize, usize)>,
    pub plus_cells: Vec<(usize, usize)>,
}

impl SemiDiagram {
    /// The monomial read off the rows: `a_(lambda_r - minus_r + plus_r)`.
    pub fn weight(&self) -> Monomial {
        let n = self.shape.box_n();
        let mut exps = vec![0u32; n + 1];
        for r in 0..self.shape.rows() {
            let minus = self.minus_cells.iter().filter(|&&(row, _)| row == r).count();
            let plus = self.plus_cells.iter().filter(|&&(row, _)| row == r).count();
            let value = self.shape.part(r) as usize - minus + plus;
            exps[value] += 1;
        }
        Monomial::new(exps)
    }
}

fn check_caps(lambda: &BoxPartition) -> Result<()> {
    let cells = lambda.rows() * lambda.box_n();
    if cells > MAX_BOX_CELLS {
        return Err(Error::OutOfRange(format!(
            "box has {cells} cells; the diagram oracle is capped at {MAX_BOX_CELLS}"
        )));
    }
    if lambda.size() > MAX_SHAPE_SIZE {
        return Err(Error::OutOfRange(format!(
            "partition has {} cells; the diagram oracle is capped at {MAX_SHAPE_SIZE}",
            lambda.size()
        )));
    }
    Ok(())
}

fn eligible_cells(lambda: &BoxPartition, mode: MarkMode) -> Vec<(usize, usize)> {
    let n = lambda.box_n();
    let mut cells = Vec::new();
    for r in 0..lambda.rows() {
        let split = lambda.part(r) as usize;
        let range = match mode {
            MarkMode::Minus => 0..split,
            MarkMode::Plus => split..n,
        };
        cells.extend(range.map(|c| (r, c)));
    }
    cells
}

/// All ways to put `i` marks of one kind on `lambda`, in lexicographic order
/// of the marked cells.  More marks than eligible cells yields no diagrams.
pub fn enumerate_semi_diagrams(
    lambda: &BoxPartition,
    i: usize,
    mode: MarkMode,
) -> Result<Vec<SemiDiagram>> {
    check_caps(lambda)?;
    let cells = eligible_cells(lambda, mode);
    let out = cells
        .iter()
        .copied()
        .combinations(i)
        .map(|marked| match mode {
            MarkMode::Minus => SemiDiagram {
                shape: lambda.clone(),
                minus_cells: marked,
                plus_cells: Vec::new(),
            },
            MarkMode::Plus => SemiDiagram {
                shape: lambda.clone(),
                minus_cells: Vec::new(),
                plus_cells: marked,
            },
        })
        .collect();
    Ok(out)
}

/// Sum of diagram weights over every `i`-marking, which the operator side
/// reproduces as `D^i(a_lambda) / i!` or `Delta^i(a_lambda) / i!`.
pub fn oracle_weight_sum(lambda: &BoxPartition, i: usize, mode: MarkMode) -> Result<Polynomial> {
    check_caps(lambda)?;
    let n = lambda.box_n();
    let cells = eligible_cells(lambda, mode);
    let mut sum = Polynomial::zero(n);
    for marked in cells.iter().copied().combinations(i) {
        let mut exps = vec![0u32; n + 1];
        let mut per_row = vec![0u32; lambda.rows()];
        for (r, _) in marked {
            per_row[r] += 1;
        }
        for (r, marks) in per_row.iter().enumerate() {
            let value = match mode {
                MarkMode::Minus => lambda.part(r) - marks,
                MarkMode::Plus => lambda.part(r) + marks,
            };
            exps[value as usize] += 1;
        }
        sum.add_term(Monomial::new(exps), Rational::one());
    }
    Ok(sum)
}

/// The two sides of the commutator identity recounted cell by cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub i: usize,
    /// Ordered sequences of `i - 1` plus placements.
    pub sequences: u64,
    /// Configurations with the distinguished mark on a remaining hollow cell.
    pub pm_count: u64,
    /// Configurations with the distinguished mark on a cell of `lambda`.
    pub mp_count: u64,
    /// `i (nk - m - i + 1)`, the multiplier the hollow side must produce.
    pub pm_factor: i64,
    /// `i m`, the multiplier the shaded side must produce.
    pub mp_factor: i64,
    /// `i (c - i + 1)`, their difference.
    pub difference_factor: i64,
    pub pm_sum: Polynomial,
    pub mp_sum: Polynomial,
    /// `Delta^(i-1)(a_lambda)`, the polynomial both factors multiply.
    pub reference: Polynomial,
    pub pm_matches: bool,
    pub mp_matches: bool,
    pub difference_matches: bool,
}

impl CensusReport {
    pub fn ok(&self) -> bool {
        self.pm_matches && self.mp_matches && self.difference_matches
    }
}

/// Recounts `D Delta^i(a_lambda) - Delta^i D(a_lambda)` as marked
/// configurations and compares the weighted totals with the closed forms.
pub fn commutator_census(lambda: &BoxPartition, i: usize) -> Result<CensusReport> {
    assert!(i >= 1, "the census needs i >= 1");
    check_caps(lambda)?;
    let n = lambda.box_n();
    let k = lambda.rows();
    let m = lambda.size();
    let hollow_at_start = n * k - m;

    let mut projected: u64 = 1;
    for step in 0..i - 1 {
        projected = projected.saturating_mul(hollow_at_start.saturating_sub(step) as u64);
        if projected > MAX_SEQUENCES {
            return Err(Error::OutOfRange(format!(
                "more than {MAX_SEQUENCES} placement sequences; lower i"
            )));
        }
    }

    let mut census = Census {
        n,
        i,
        m,
        counts: lambda.parts().to_vec(),
        sequences: 0,
        pm_count: 0,
        mp_count: 0,
        pm_sum: Polynomial::zero(n),
        mp_sum: Polynomial::zero(n),
    };
    census.walk(i - 1);
    let Census { sequences, pm_count, mp_count, pm_sum, mp_sum, .. } = census;

    let reference = operator_power(
        Operator::Delta,
        i - 1,
        &Polynomial::term(lambda.monomial(), Rational::one()),
    );
    let pm_factor = (i as i64) * ((n * k) as i64 - m as i64 - i as i64 + 1);
    let mp_factor = (i * m) as i64;
    let c = (n * k) as i64 - 2 * m as i64;
    let difference_factor = (i as i64) * (c - i as i64 + 1);
    let pm_matches = pm_sum == reference.scale(&rat(pm_factor));
    let mp_matches = mp_sum == reference.scale(&rat(mp_factor));
    let difference_matches =
        &pm_sum - &mp_sum == reference.scale(&rat(difference_factor));
    Ok(CensusReport {
        i,
        sequences,
        pm_count,
        mp_count,
        pm_factor,
        mp_factor,
        difference_factor,
        pm_sum,
        mp_sum,
        reference,
        pm_matches,
        mp_matches,
        difference_matches,
    })
}

/// Depth-first placement of the `i - 1` plus marks; every hollow cell of a
/// row is a distinct choice, so a leaf is reached once per ordered sequence.
struct Census {
    n: usize,
    i: usize,
    /// Cells of the original partition, the choices for the shaded side.
    m: usize,
    counts: Vec<u32>,
    sequences: u64,
    pm_count: u64,
    mp_count: u64,
    pm_sum: Polynomial,
    mp_sum: Polynomial,
}

impl Census {
    fn walk(&mut self, remaining: usize) {
        if remaining == 0 {
            self.sequences += 1;
            let hollow_left: usize =
                self.counts.iter().map(|&s| self.n - s as usize).sum();
            let mut exps = vec![0u32; self.n + 1];
            for &s in &self.counts {
                exps[s as usize] += 1;
            }
            let mono = Monomial::new(exps);
            self.pm_count += (self.i * hollow_left) as u64;
            self.mp_count += (self.i * self.m) as u64;
            self.pm_sum.add_term(mono.clone(), rat((self.i * hollow_left) as i64));
            self.mp_sum.add_term(mono, rat((self.i * self.m) as i64));
            return;
        }
        for r in 0..self.counts.len() {
            let hollow = self.n - self.counts[r] as usize;
            for _slot in 0..hollow {
                self.counts[r] += 1;
                self.walk(remaining - 1);
                self.counts[r] -= 1;
            }
        }
    }
}
