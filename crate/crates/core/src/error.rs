//! Error type shared by every module.
//!
//! Each variant carries a stable machine-readable code (see [`Error::code`])
//! so callers such as the CLI can surface failures without string matching on
//! the human-readable message.

use thiserror::Error;

/// All domain failures produced by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A ring spec, element literal, or payload could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// The characteristic parameter of a finite ring is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// An extension-field modulus has a nontrivial factor.
    #[error("modulus is reducible: divisible by {0}")]
    NotIrreducible(String),

    /// An enumeration was requested over the rationals.
    #[error("ring is infinite; enumeration is not possible")]
    InfiniteRing,

    /// A request falls outside the supported desk scale.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Operand shapes do not match.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix (or the enveloping map) has no inverse over the base ring.
    #[error("matrix is not invertible")]
    NotInvertible,

    /// `idempotent_image_basis` was called on a non-idempotent matrix.
    #[error("matrix is not idempotent")]
    NotIdempotent,

    /// A module operation needed a free module but met non-unit pivots.
    #[error("span is not free: echelon form has a non-unit pivot")]
    NotFreeOverLocalRing,

    /// A scalar that must be a unit is not one.
    #[error("element {0} is not a unit")]
    NotUnit(String),

    /// A projective point was built from a vector with no unit coordinate.
    #[error("no unit coordinate in {0}")]
    NoUnitCoordinate(String),

    /// An enumeration would exceed the hard size cap.
    #[error("enumeration too large: {0}")]
    TooLarge(String),

    /// Structure constants fail associativity at the given basis triple.
    #[error("structure constants violate associativity at basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    /// The designated unit fails a unit law at the given basis index.
    #[error("unit law fails at basis index {0}")]
    BadUnit(usize),

    /// A matrix-unit family violates the product or sum relations.
    #[error("matrix-unit relations fail: {0}")]
    BadRelations(String),

    /// A linear map of algebras is not a bijective homomorphism.
    #[error("map is not an algebra automorphism: {0}")]
    NotAutomorphism(String),

    /// An operation required an Azumaya algebra.
    #[error("algebra is not Azumaya: {0}")]
    NotAzumaya(String),

    /// A claimed right ideal fails the closure check.
    #[error("subspace is not a right ideal: {0}")]
    NotRightIdeal(String),

    /// A right ideal has the wrong rank for the requested operation.
    #[error("right ideal has rank {got}, expected {want}")]
    WrongIdealRank { got: usize, want: usize },

    /// A splitting map failed to be injective on the algebra.
    #[error("splitting map is not faithful: {0}")]
    NotFaithful(String),

    /// A subspace passed point reconstruction but is not of the form delta(X).
    #[error("ideal is not in the image of delta: {0}")]
    NotInDeltaImage(String),

    /// A point does not satisfy the conic equation.
    #[error("point {0} does not lie on the conic")]
    NotOnConic(String),

    /// Neither affine chart of the conic parametrization applies.
    #[error("dichotomy failure: neither chart denominator is a unit for {0}")]
    DichotomyFailure(String),

    /// A parametrization step produced a vector with no unit coordinate.
    #[error("degenerate output: {0}")]
    DegenerateOutput(String),

    /// An ideal or map was built against a different algebra than supplied.
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
}

impl Error {
    /// Stable machine-readable code for this failure.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::NotPrime(_) => "NotPrime",
            Error::NotIrreducible(_) => "NotIrreducible",
            Error::InfiniteRing => "InfiniteRing",
            Error::Unsupported(_) => "Unsupported",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotInvertible => "NotInvertible",
            Error::NotIdempotent => "NotIdempotent",
            Error::NotFreeOverLocalRing => "NotFreeOverLocalRing",
            Error::NotUnit(_) => "NotUnit",
            Error::NoUnitCoordinate(_) => "NoUnitCoordinate",
            Error::TooLarge(_) => "TooLarge",
            Error::NotAssociative { .. } => "NotAssociative",
            Error::BadUnit(_) => "BadUnit",
            Error::BadRelations(_) => "BadRelations",
            Error::NotAutomorphism(_) => "NotAutomorphism",
            Error::NotAzumaya(_) => "NotAzumaya",
            Error::NotRightIdeal(_) => "NotRightIdeal",
            Error::WrongIdealRank { .. } => "WrongIdealRank",
            Error::NotFaithful(_) => "NotFaithful",
            Error::NotInDeltaImage(_) => "NotInDeltaImage",
            Error::NotOnConic(_) => "NotOnConic",
            Error::DichotomyFailure(_) => "DichotomyFailure",
            Error::DegenerateOutput(_) => "DegenerateOutput",
            Error::AlgebraMismatch(_) => "AlgebraMismatch",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
