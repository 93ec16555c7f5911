use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} out of range [2, 2^61-1]")]
    ModulusOutOfRange(u64),
    #[error("invalid operator spec: {0}")]
    InvalidSpec(String),
    #[error("multiplier 2^{k}+1 does not fit below modulus {p}")]
    SpecialMultiplierTooLarge { k: u32, p: u64 },
    #[error("seed vector has no non-zero component")]
    AllZeroSeed,
    #[error("seed vector length {got} does not match N = {expected}")]
    SeedLength { expected: usize, got: usize },
    #[error("malformed state blob: {0}")]
    FormatError(String),
    #[error("non-canonical residue {value} for modulus {p}")]
    RangeError { value: u64, p: u64 },
    #[error("eigenvalue iteration failed to converge at index {0}")]
    ConvergenceFailure(usize),
    #[error("matrix dimension {n} exceeds the spectral cap {cap}")]
    DimensionTooLarge { n: u32, cap: u32 },
    #[error("modulus {p} too small for degree-{n} interpolation")]
    ModulusTooSmall { p: u64, n: u32 },
    #[error("supplied factorization does not multiply back to q")]
    BadFactorization,
    #[error("built-in factorization is capped at {cap}; q has {digits} digits — supply a factorization file")]
    FactorizationUnavailable { digits: u64, cap: u64 },
    #[error("state space p^N = {0} exceeds the enumeration bound {1}")]
    StateSpaceTooLarge(f64, u64),
    #[error("need at least {needed} draws, got {got}")]
    InsufficientDraws { needed: u64, got: u64 },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
