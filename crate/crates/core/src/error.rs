use thiserror::Error;

use crate::partitions::Category;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size limit exceeded: k = {k} is larger than the configured maximum {max}")]
    SizeLimit { k: usize, max: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("not a member of {family}: {item}")]
    Membership { family: String, item: String },

    #[error("Gram matrix is singular for category {cat}, k = {k}, n = {n}")]
    Singular { cat: Category, k: usize, n: u32 },

    #[error("word length mismatch: |i| = {left}, |j| = {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("letter {letter} is outside 1..={n}")]
    LetterOutOfRange { letter: u32, n: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("group {family}_{n} is too large to enumerate")]
    GroupTooLarge { family: char, n: u32 },

    #[error("moment of order {needed} is not available (have up to {available})")]
    InsufficientOrder { needed: usize, available: usize },

    #[error("species {species} cannot be paired with category {cat}")]
    IncompatibleSpecies { species: String, cat: Category },

    #[error("variance must be nonnegative, got {0}")]
    NegativeVariance(String),
}

impl Error {
    /// Stable machine-readable tag, used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SizeLimit { .. } => "size_limit",
            Error::Dimension { .. } => "dimension",
            Error::EmptyInput(_) => "empty_input",
            Error::Membership { .. } => "membership",
            Error::Singular { .. } => "singular",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::LetterOutOfRange { .. } => "letter_out_of_range",
            Error::Precondition(_) => "precondition",
            Error::Parse(_) => "parse",
            Error::GroupTooLarge { .. } => "group_too_large",
            Error::InsufficientOrder { .. } => "insufficient_order",
            Error::IncompatibleSpecies { .. } => "incompatible_species",
            Error::NegativeVariance(_) => "negative_variance",
        }
    }
}
