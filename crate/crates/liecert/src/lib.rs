//! Exact-arithmetic verification engine for simple Lie algebras and their
//! adjoint varieties.
//!
//! The crate builds root systems and Chevalley-basis Lie algebras over the
//! rationals, assembles the Spencer and Bianchi operators as sparse rational
//! matrices, samples the minimal nilpotent orbit exactly, and certifies
//! statements such as "the Bianchi kernel of `ad g ⊕ C·Id` is one-dimensional
//! and generated by the Lie bracket" as finite rational linear algebra.
//! Every certified claim carries a replayable witness: an exact kernel
//! element, or a prime achieving a modular rank bound.
//!
//! Modules mirror the pipeline:
//!
//! * [`rootsys`] — root systems, Cartan pairings, highest root;
//! * [`liealg`] — Chevalley structure constants, brackets, Killing form;
//! * [`exactla`] — sparse exact linear algebra and modular-rank certificates;
//! * [`grading`] — the contact grading attached to the highest root;
//! * [`operators`] — Spencer and Bianchi matrices on indexed tensor bases;
//! * [`orbit`] — exact orbit sampling and the sampled subspaces Ξ, Ξ′, Σ, S;
//! * [`certify`] — theorem-level pipelines emitting JSON certificates;
//! * [`cache`] — the portable triple-list text format for cached tables.

pub mod cache;
pub mod certify;
pub mod exactla;
pub mod grading;
pub mod liealg;
pub mod operators;
pub mod orbit;
pub mod rootsys;

/// Exact scalar type used throughout: arbitrary-precision rationals.
pub type Rat = num_rational::BigRational;

/// Version tag baked into cache keys and certificates. Bump when the
/// structure-constant conventions or any serialized format changes.
pub const ENGINE_VERSION: &str = "liecert-0.1.0-tables-v1";

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid type/rank combination: {0}")]
    InvalidType(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimension mismatch: {have} vs {want}")]
    AmbientMismatch { have: usize, want: usize },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("zero vector not allowed: {0}")]
    ZeroVector(String),
    #[error("prime {0} divides a stored denominator")]
    PrimeDividesDenominator(u64),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("invariance check failed: {0}")]
    NotInvariant(String),
    #[error("unknown check name: {0}")]
    UnknownCheck(String),
    #[error("cache format error: {0}")]
    CacheFormat(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub(crate) fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
