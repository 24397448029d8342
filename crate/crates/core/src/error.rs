use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u64, u64),

    #[error("target level {target} is not a multiple of {source_level}")]
    IncompatibleLevel { source_level: u64, target: u64 },

    #[error("root index {root} is not coprime to level {level}")]
    NotCoprime { root: i64, level: u64 },

    #[error("character of order {order} (modulus {modulus}) needs a level divisible by {needed}, got {level}")]
    InsufficientLevel {
        order: u64,
        modulus: u64,
        needed: u64,
        level: u64,
    },

    #[error("unsupported Bernoulli weight {0} (only 1 and 2)")]
    UnsupportedWeight(u32),

    #[error("prime {q} divides the cyclotomic level {level}")]
    RamifiedPrime { q: u64, level: u64 },

    #[error("valuation ambiguous at precision {precision} for prime {q}")]
    InsufficientPrecision { q: u64, precision: u32 },

    #[error("valuation bookkeeping failed at q = {q}: sum f*v = {sum}, v_q(norm) = {expected}")]
    ValuationMismatch { q: u64, sum: i64, expected: i64 },

    #[error("zero has no numerator order")]
    ZeroElement,

    #[error("prime {0} is too large for word-size residue arithmetic")]
    PrimeTooLarge(String),

    #[error("invalid Eisenstein data: {0}")]
    InvalidSpec(String),

    #[error("Gauss sum G(phi) vanishes at modulus {modulus}; use the conductor-level policy")]
    VanishingGaussSum { modulus: u64 },

    #[error("character is not admissible for the twist: {0}")]
    InadmissibleTwist(String),

    #[error("prime {0} divides the level")]
    PrimeDividesLevel(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("cache i/o: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
