use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the primes must be distinct (got {0} twice)")]
    EqualPrimes(u64),
    #[error("operands live over different prime fields (F_{left} vs F_{right})")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),
    #[error("the reduction modulus must be a nonconstant polynomial")]
    ConstantModulus,
    #[error("denominator {den} is divisible by p = {p}")]
    DenominatorDivisibleByP { den: i64, p: u64 },
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("degree {degree} is not a multiple of the factor degree {factor_degree}")]
    MixedDegrees { degree: usize, factor_degree: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("matrix dimensions do not agree: {0}")]
    DimensionMismatch(String),
    #[error("minimal polynomial has a repeated irreducible factor")]
    NotSemisimple,
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("group of order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: u128, cap: u128 },
    #[error("s = {s} is divisible by p = {p}")]
    SDivisibleByP { s: u64, p: u64 },
    #[error("ramification filtration is inconsistent: {0}")]
    InconsistentFiltration(String),
    #[error("truncation order {n} is below the required {needed}")]
    TruncationTooShort { n: usize, needed: usize },
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("an unramified abelian cover of a genus-0 curve is trivial")]
    GenusZeroBase,
    #[error("internal consistency check failed: {0}")]
    CheckFailed(String),
}

impl Error {
    /// Stable machine-readable name, used as the `error` field of JSON output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::EqualPrimes(_) => "EqualPrimes",
            Error::ModulusMismatch { .. } => "ModulusMismatch",
            Error::DivisionByZero(_) => "DivisionByZero",
            Error::ConstantModulus => "ConstantModulus",
            Error::DenominatorDivisibleByP { .. } => "DenominatorDivisibleByP",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::NotSquarefree => "NotSquarefree",
            Error::MixedDegrees { .. } => "MixedDegrees",
            Error::NotMonic => "NotMonic",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotSemisimple => "NotSemisimple",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::GroupTooLarge { .. } => "GroupTooLarge",
            Error::SDivisibleByP { .. } => "SDivisibleByP",
            Error::InconsistentFiltration(_) => "InconsistentFiltration",
            Error::TruncationTooShort { .. } => "TruncationTooShort",
            Error::UnsupportedParameters(_) => "UnsupportedParameters",
            Error::GenusZeroBase => "GenusZeroBase",
            Error::CheckFailed(_) => "CheckFailed",
        }
    }
}
