//! Error type shared by the series engine.

use thiserror::Error;

/// Everything that can go wrong while building or combining series.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A monomial or truncation request lies at or beyond the known window.
    #[error("exponent {exponent} is not below the truncation order {order}")]
    InvalidOrder { exponent: i64, order: i64 },

    /// Coefficient query past the point where the series is known.
    #[error("coefficient of q^{exponent} is unknown: series is only exact below order {order}")]
    UnknownCoefficient { exponent: i64, order: i64 },

    /// Inversion requires a lowest coefficient of +1 or -1.
    #[error("series is not invertible: {0}")]
    NotInvertible(&'static str),

    /// Dissection/interleaving residue must satisfy 0 <= r < m.
    #[error("residue {residue} is out of range for modulus {modulus}")]
    InvalidResidue { modulus: i64, residue: i64 },

    /// Interleaving needs exactly one part per residue class.
    #[error("expected {expected} interleave parts, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    /// A product factor with a nonsensical shape (modulus < 1, offset < 0).
    #[error("invalid product factor: {0}")]
    InvalidFactor(String),

    /// Theta parameters whose exponents sum to <= 0 give a divergent series.
    #[error("theta series {instance} diverges: argument exponents sum to {sum}, need >= 1")]
    DivergentTheta { instance: String, sum: i64 },

    /// A verification-family parameter tuple outside the family's constraints.
    #[error("invalid case: {0}")]
    InvalidCase(String),

    /// A suite name the verification runner does not know.
    #[error("unknown suite '{name}'; available: {available}")]
    UnknownSuite { name: String, available: String },
}

pub type Result<T> = std::result::Result<T, Error>;
