//! Error type shared by the whole library.
//!
//! Failures of a *check* (a Leibniz identity that does not hold, an
//! additivity witness) are data, not errors; they live in
//! [`crate::analysis::CheckReport`]. The variants here are genuine
//! operation failures: domain violations, impossible factorizations,
//! missing table entries.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input")]
    ZeroInput,
    #[error("norm bound exceeded: {norm} > {bound}")]
    NormBoundExceeded { norm: String, bound: u64 },
    #[error("polynomial is not divisible by the divisor")]
    NotDivisible,
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("incomplete factorization: {remainder} has no Gaussian-rational root")]
    IncompleteFactorization { remainder: String },
    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),
    #[error("unsupported scalar for this map: {0}")]
    UnsupportedScalar(String),
    #[error("map is not a derivation: additivity fails at ({a}, {b})")]
    NotADerivation { a: String, b: String },
    #[error("function table has no entry for {point} and no usable default")]
    DomainGap { point: String },
    #[error("sampled pool has no entry for {point}")]
    PoolGap { point: String },
    #[error("prime-log weight key {key} is not a canonical Gaussian prime")]
    InvalidPrimeLogKey { key: String },
    #[error("T(z^{n}) is not of the form c*N*z^(N-1) + d*z^N: extra term at power {power}")]
    NotOfCorollaryForm { n: usize, power: usize },
    #[error("operator requires a real factored polynomial via the real entry point")]
    RealFormRequired,
    #[error("pointwise operator has no polynomial output; use the pointwise evaluator")]
    PointwiseOnly,
    #[error("scalar is not real: {0}")]
    NotReal(String),
    #[error("quadratic z^2 + {alpha}*z + {beta} is reducible over the reals")]
    ReducibleQuadratic { alpha: String, beta: String },
    #[error("derivation weight vector has {got} entries, at most {max} supported")]
    TooManyTranscendentals { got: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
