use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("({0}, {1}) are not coprime")]
    NotCoprime(BigInt, BigInt),

    #[error("({p}, {q}) violates the pq normalization p - q > q >= 1 ({hint})")]
    PqOutOfRange { p: BigInt, q: BigInt, hint: String },

    #[error("({m}, {n}) violates the mn normalization n > m >= 1")]
    MnOutOfRange { m: BigInt, n: BigInt },

    #[error("expected a positive integer, got {0}")]
    NotPositive(BigInt),

    #[error("continued fraction has a vanishing tail at coefficient {index}")]
    DegenerateTail { index: usize },

    #[error("rational {0} is not below -1, so it has no expansion with all coefficients <= -2")]
    NotNegativeExpandable(String),

    #[error("linking matrix is singular; the surgered manifold is not a rational homology sphere")]
    NonRationalSphere,

    #[error("index {index} outside the valid range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("rot + lk = {0} is odd, so rho is not integral (the sublink is not characteristic)")]
    NonIntegralRho(BigInt),

    #[error("cannot halve {value} modulo {modulus}: the modulus is even and the value is odd")]
    ModularHalfUndefined { value: BigInt, modulus: BigInt },

    #[error("spin label ({t0}, {t1}) is not valid here: {reason}")]
    InvalidSpinLabel { t0: i8, t1: i8, reason: &'static str },

    #[error("p = {0} is odd; this formula needs even p")]
    RequiresEvenP(BigInt),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("gamma certificate failed: {0}")]
    CertificateFailure(String),

    #[error("unknown {kind} `{name}`; known: {known}")]
    UnknownName { kind: &'static str, name: String, known: String },

    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
}
