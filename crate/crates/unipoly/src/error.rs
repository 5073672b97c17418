//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors raised by the algebra, group, map, sequence and region modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("variable layout mismatch: {0} vs {1}")]
    LayoutMismatch(String, String),

    #[error("duplicate block name {0}")]
    DuplicateBlock(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("not a bijection on {{0..{0}}}")]
    NotABijection(usize),

    #[error("duplicate interpolation node {0}")]
    DuplicateNode(i64),

    #[error("need at least {needed} samples, got {got}")]
    NotEnoughSamples { needed: usize, got: usize },

    #[error("not a polynomial of the claimed degree: value at node {node} is {actual}, fit predicts {expected}")]
    SurplusSampleMismatch {
        node: i64,
        expected: String,
        actual: String,
    },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("diagonal index {k} out of range for size {n}")]
    DiagonalOutOfRange { k: usize, n: usize },

    #[error("matrix is not in the lower-central subgroup of level {0}")]
    NotInSubgroup(usize),

    #[error("rational coefficients required: {0}")]
    RationalRequired(String),

    #[error("degree recursion exceeded its certified depth cap {0}")]
    DegreeCapExceeded(usize),

    #[error("lc-degree vector is not nondecreasing")]
    NotNondecreasing,

    #[error("constant map required, got a map with nonconstant entries")]
    ConstantRequired,

    #[error("nonconstant map required")]
    NonConstantRequired,

    #[error("map must have a single active variable and no shift blocks")]
    NotASequence,

    #[error("map is not symmetric modulo the central series at level {0}")]
    NotSymmetricModulo(usize),

    #[error("value at t = {t} is not an integer: {value}")]
    NonIntegralValue { t: u64, value: String },

    #[error("period search exceeded its cap {0}")]
    PeriodCapExceeded(u128),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
