//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong outside of a caller-side bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two polynomials or monomials from different coefficient rings were mixed.
    #[error("context mismatch: expected a_0..a_{expected}, got a_0..a_{actual}")]
    ContextMismatch { expected: usize, actual: usize },

    /// Input failed a shape or range check; the message names the offender.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A parameter left the domain an operation is defined on.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A space dimension exceeded the configured guardrail.
    #[error("capacity exceeded: dimension {required} > limit {limit} (raise the limit to proceed)")]
    Capacity { required: usize, limit: usize },

    /// An operation requiring a semi-invariant received something else.
    #[error("not a semi-invariant: D applied to the input is nonzero")]
    NotSemiInvariant,

    /// The input polynomial is not homogeneous-isobaric where one was required.
    #[error("not homogeneous-isobaric: {0}")]
    NotHomogeneous(String),

    /// No witness exists for the requested additivity instance.
    #[error("no witness: {0}")]
    NoWitness(String),

    /// An exact identity that must hold by theorem failed; indicates a defect.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
