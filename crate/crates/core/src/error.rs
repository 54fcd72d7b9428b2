use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable registry mismatch: {left:?} vs {right:?}")]
    RegistryMismatch { left: Vec<String>, right: Vec<String> },

    #[error("invalid variable registry: {0}")]
    InvalidRegistry(String),

    #[error("exponent vector has length {got}, registry has {expected} variables")]
    ExponentLength { expected: usize, got: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("requested order {order} is below the monomial degree {degree}")]
    OrderBelowDegree { order: i64, degree: i64 },

    #[error("coefficient of degree {degree} requested but series is only exact up to degree {order}")]
    BeyondOrder { degree: i64, order: i64 },

    #[error("series is not a unit: {0}")]
    NotAUnit(String),

    #[error("leading term is ambiguous: {count} terms share the minimal degree {degree}")]
    AmbiguousLeadingTerm { degree: i64, count: usize },

    #[error("square root needs even leading exponents, got {0:?}")]
    OddLeadingExponent(Vec<i32>),

    #[error("square root needs a positive square leading coefficient, got {0}")]
    NonSquareLeadingCoefficient(String),

    #[error("square root has a non-integral coefficient at degree {degree}")]
    NonIntegralRoot { degree: i64 },

    #[error("exact (untruncated) series with more than one term cannot be {0}; truncate it first")]
    Unbounded(&'static str),

    #[error("substitution does not scale degrees uniformly: {0}")]
    NonHomogeneousSubstitution(String),

    #[error("unsupported shape {v}x{w}")]
    UnsupportedShape { v: u32, w: u32 },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("lattice edge {0} lies outside the fundamental domain")]
    EdgeOutsideDomain(String),

    #[error("B location {location} out of range (shape has {count})")]
    InvalidLocation { location: usize, count: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("prefactor ledger did not cancel: {0}")]
    ResidualLedger(String),
}
