//! Exact computations with semi-invariants of binary forms.
//!
//! A binary form of degree `n` is written with binomial-weighted coefficients
//! `a_0, ..., a_n`.  Everything here happens on the coefficient side: sparse
//! polynomials in the `a_i` over arbitrary-precision rationals, the two shear
//! operators `D` and `Delta` acting on them, partition counting inside a
//! `k x n` box, and exact linear algebra that carves out the semi-invariant
//! subspaces.

pub mod diagrams;
pub mod error;
pub mod linalg;
pub mod operators;
pub mod partitions;
pub mod poly;
pub mod sample;
pub mod spaces;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
