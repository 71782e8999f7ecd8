use thiserror::Error;

/// Errors raised by ring construction, polynomial arithmetic, code
/// construction and the enumeration oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("modulus {0} is not irreducible modulo p")]
    ReducibleModulus(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operands belong to different rings ({0} vs {1})")]
    RingMismatch(String, String),

    #[error("{0} is not a unit")]
    NotUnit(String),

    #[error("divisor polynomial is not monic")]
    NotMonic,

    #[error("{0} is not a non-zero Teichmuller element")]
    NotTeichmuller(String),

    #[error("index {index} out of range {range}")]
    OutOfRange { index: i64, range: String },

    #[error("residue factors are not pairwise coprime")]
    NotCoprime,

    #[error("code has p^{exponent} codewords (p = {p}), over the enumeration cap {cap}; raise --cap or use the formula path")]
    CapExceeded { p: u64, exponent: u64, cap: u64 },

    #[error("formula not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
