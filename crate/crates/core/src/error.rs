use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inadmissible Cartan type {family}{rank}")]
    InadmissibleType { family: char, rank: usize },

    #[error("cannot parse Cartan type {0:?}")]
    ParseType(String),

    #[error("cannot parse coweight {0:?}")]
    ParseCoweight(String),

    #[error("coweight has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("Weyl group order exceeds the configured bound of {bound}")]
    GroupTooLarge { bound: usize },

    #[error("half-sum of coroots is not integral")]
    NonIntegralRho,

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("cannot specialize q = 0: negative q-exponent {0} present")]
    NegativeQExponentAtZero(i32),

    #[error("word {0:?} is not reduced")]
    NonReducedWord(Vec<usize>),

    #[error("coweight {0} is not dominant")]
    NonDominant(String),

    #[error("formula requires Cartan family {expected}, got {found}")]
    WrongFamily { expected: char, found: String },

    #[error("character {name:?} is not available for type {cartan}")]
    UnknownCharacter { name: String, cartan: String },

    #[error("character values are not a linear character: {0}")]
    IllDefinedCharacter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("ratio is not a unit monomial: {0}")]
    RatioNotMonomial(String),

    #[error("malformed serialized element: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
