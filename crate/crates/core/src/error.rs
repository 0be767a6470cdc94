use thiserror::Error;

/// Errors reported by the exact-arithmetic engine.
///
/// Every operation that can reject its input returns one of these; nothing
/// in the crate panics on malformed mathematical data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator names must be nonempty")]
    EmptyName,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("operands live over different coefficient rings")]
    RingMismatch,
    #[error("operands have different numbers of series variables")]
    ArityMismatch,
    #[error("constant term is not invertible in the coefficient ring")]
    NonInvertibleLeadingTerm,
    #[error("series must have zero constant term here")]
    NonzeroConstantTerm,
    #[error("linear coefficient is not invertible in the coefficient ring")]
    NonInvertibleLinearCoefficient,
    #[error("scalar {0} is not an element of the base ring")]
    ScalarOutsideBase(String),
    #[error("truncation degree must be at least 2")]
    DegreeTooSmall,
    #[error("series is not strict: it must be t + higher-order terms")]
    NotStrict,
    #[error("series does not intertwine the source and target group laws")]
    NotAStrictIso,
    #[error("formal group law axioms fail: {0}")]
    NotAFormalGroupLaw(String),
    #[error("base ring is not {0}-local (expected Z_({0}) or the rationals)")]
    NotPLocalRing(u64),
    #[error("p-typification produced a coefficient that is not {0}-local")]
    CartierIntegralityFailure(u64),
    #[error("second p-typification pass did not return the same law with the identity isomorphism")]
    IdempotencyFailure,
    #[error("polynomial is not symmetric in the series variables")]
    NotSymmetric,
    #[error("series must have constant term 1")]
    NonUnitConstantTerm,
    #[error("rank {rank} exceeds the {available} available Chern generators")]
    RankTooLarge { rank: usize, available: usize },
    #[error("generator index {0} out of range")]
    NoSuchGenerator(usize),
    #[error("term of degree {degree} exceeds the truncation {truncation}")]
    TermBeyondTruncation { degree: u32, truncation: u32 },
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
