use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of order {p}^{m} is outside the supported range")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("Witt length {len} for p = {p} is outside the supported range (p <= {max_prime}, 1 <= len <= {max_len}, p^(len-1) <= {max_degree})")]
    WittUnsupported {
        p: u64,
        len: usize,
        max_prime: u64,
        max_len: usize,
        max_degree: u64,
    },
    #[error("Witt vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("ambient parameters differ: {0}")]
    AmbientMismatch(String),
    #[error("cannot decompose the zero element")]
    ZeroElement,
    #[error("filtration level must be at least {min}, got {got}")]
    LevelOutOfRange { min: u64, got: u64 },
    #[error("search space of {size} candidates exceeds cap {cap}")]
    SearchSpaceExceeded { size: u128, cap: u128 },
    #[error("no monomial with full support on the selected variables")]
    EmptySupportSet,
    #[error(
        "leading coefficient is a p-th power on the selected support; reduce the character first"
    )]
    PPowerObstruction,
    #[error("good vector is not certified")]
    Uncertified,
    #[error("classification is only defined for length-1 characters, got length {0}")]
    ClassifyLength(usize),
    #[error("could not draw {wanted} distinct curves (got {got})")]
    SamplerExhausted { wanted: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown {kind} '{name}'")]
    UnknownStrategy { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
