use thiserror::Error;

/// Every failure an operation in this crate can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("lex tuples of different widths ({0} vs {1})")]
    WidthMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands live on different monoids")]
    MonoidMismatch,
    #[error("operands use different coefficient groups")]
    GammaMismatch,
    #[error("series have different base primes")]
    BaseMismatch,
    #[error("exponent {0:?} is not in the monoid")]
    NotInMonoid(Vec<i64>),
    #[error("coefficient {0} is not in the coefficient group")]
    NotInGamma(String),
    #[error("invalid coefficient group: {0}")]
    InvalidGamma(String),
    #[error("invalid defining matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("prime is not in Cont (leading coefficient entry is not positive)")]
    NotInCont,
    #[error("prime is not in Cont or has a nontrivial ideal-kernel")]
    NotInContInterior,
    #[error("sublattice basis meets a bottom column")]
    BottomColumnHit,
    #[error("the identity has no archimedean class")]
    IdentityHasNoClass,
    #[error("stored terms are not separated from the precision radius")]
    InsufficientPrecision,
    #[error("prime does not extend to the convergent series semiring")]
    NotInImage,
    #[error("stream has no valid convergence certificate")]
    NotCertified,
    #[error("no monoid generating set available at rank {0}")]
    NoGenerators(usize),
    #[error("rank {0} exceeds the supported limit {1}")]
    RankTooLarge(usize, usize),
    #[error("covector vanishes on the kernel of the term map")]
    WPerpendicular,
    #[error("invalid stream: {0}")]
    InvalidStream(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::WidthMismatch(..) => "WidthMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::MonoidMismatch => "MonoidMismatch",
            Error::GammaMismatch => "GammaMismatch",
            Error::BaseMismatch => "BaseMismatch",
            Error::NotInMonoid(_) => "NotInMonoid",
            Error::NotInGamma(_) => "NotInGamma",
            Error::InvalidGamma(_) => "InvalidGamma",
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::InvalidCone(_) => "InvalidCone",
            Error::NotInCont => "NotInCont",
            Error::NotInContInterior => "NotInContInterior",
            Error::BottomColumnHit => "BottomColumnHit",
            Error::IdentityHasNoClass => "IdentityHasNoClass",
            Error::InsufficientPrecision => "InsufficientPrecision",
            Error::NotInImage => "NotInImage",
            Error::NotCertified => "NotCertified",
            Error::NoGenerators(_) => "NoGenerators",
            Error::RankTooLarge(..) => "RankTooLarge",
            Error::WPerpendicular => "WPerpendicular",
            Error::InvalidStream(_) => "InvalidStream",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
