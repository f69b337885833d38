//! Error types shared across the crate.

use thiserror::Error;

/// Errors surfaced by spectrum computation and inversion.
#[derive(Debug, Error)]
pub enum SpectralError {
    /// A metric parameter was zero, negative, or non-finite.
    #[error("invalid metric parameter {name} = {value}; must be a positive finite real")]
    InvalidParameter { name: &'static str, value: f64 },

    /// A domain argument was out of range (e.g. negative truncation weight).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The assembled matrix failed to become Hermitian after the
    /// orthonormalizing conjugation. This signals an assembly bug, not
    /// a user error.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    /// The numerically confirmed minimum undercut the closed-form first
    /// eigenvalue. This would contradict the first-eigenvalue theorem
    /// and is treated as an implementation-bug signal.
    #[error("conjecture violation: {0}")]
    ConjectureViolation(String),

    /// No inversion branch reproduced the supplied spectral invariants.
    #[error("inconsistent spectral invariants: {0}")]
    InconsistentInvariants(String),

    /// Both inversion branches validated with different parameter
    /// triples, contradicting uniqueness of the reconstruction.
    #[error("ambiguous inversion: {0}")]
    AmbiguousInversion(String),
}

pub type Result<T> = std::result::Result<T, SpectralError>;
