use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure carries the first offending cell, tuple or element so that
/// callers can report a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed multiplication table at cell ({row}, {col})")]
    MalformedTable { row: usize, col: usize },
    #[error("element 0 is not a two-sided identity: fails at element {element}")]
    NoIdentityAtZero { element: usize },
    #[error("element {element} has no two-sided inverse")]
    MissingInverse { element: usize },
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {generator} is not a permutation of 0..{degree}")]
    NotAPermutation { generator: usize, degree: usize },
    #[error("permutation closure exceeded the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("not a subgroup of the given group (witness element {element})")]
    NotASubgroup { element: usize },
    #[error("expected arity {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("unsupported cochain arity {0}")]
    UnsupportedArity(usize),
    #[error("cochain is not a 3-cocycle, first violation at {witness:?}")]
    NotACocycle { witness: Vec<usize> },
    #[error("map is not a homomorphism at ({a}, {b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("problem size {size} exceeds cap {cap}")]
    TooLarge { size: u128, cap: u128 },
    #[error("elements {a} and {b} do not commute")]
    NotCommuting { a: usize, b: usize },
    #[error("tuple {tuple:?} is not pairwise commuting")]
    NotPairwiseCommuting { tuple: Vec<usize> },
    #[error("element {element} does not commute with base element {base}")]
    NotInCentralizer { element: usize, base: usize },
    #[error("character table is missing the commuting tuple {tuple:?}")]
    IncompleteTable { tuple: Vec<usize> },
    #[error("not a transversal: {reason} (witness element {element})")]
    NotATransversal { element: usize, reason: &'static str },
    #[error("monomial matrices of size {left} and {right} cannot be multiplied")]
    SizeMismatch { left: usize, right: usize },
    #[error("representative {rep} left its class block under the action of {element}")]
    ClassEscape { rep: usize, element: usize },
    #[error("integer overflow during Smith normal form")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedTable { .. } => "MalformedTable",
            Error::NoIdentityAtZero { .. } => "NoIdentityAtZero",
            Error::MissingInverse { .. } => "MissingInverse",
            Error::NotAssociative { .. } => "NotAssociative",
            Error::NotAPermutation { .. } => "NotAPermutation",
            Error::ClosureTooLarge { .. } => "ClosureTooLarge",
            Error::NotASubgroup { .. } => "NotASubgroup",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::UnsupportedArity(_) => "UnsupportedArity",
            Error::NotACocycle { .. } => "NotACocycle",
            Error::NotAHomomorphism { .. } => "NotAHomomorphism",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotCommuting { .. } => "NotCommuting",
            Error::NotPairwiseCommuting { .. } => "NotPairwiseCommuting",
            Error::NotInCentralizer { .. } => "NotInCentralizer",
            Error::IncompleteTable { .. } => "IncompleteTable",
            Error::NotATransversal { .. } => "NotATransversal",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::ClassEscape { .. } => "ClassEscape",
            Error::Overflow => "Overflow",
            Error::Parse(_) => "ParseError",
        }
    }

    pub fn witness(&self) -> Vec<usize> {
        match self {
            Error::MalformedTable { row, col } => vec![*row, *col],
            Error::NoIdentityAtZero { element }
            | Error::MissingInverse { element }
            | Error::NotASubgroup { element }
            | Error::NotATransversal { element, .. } => vec![*element],
            Error::NotAssociative { a, b, c } => vec![*a, *b, *c],
            Error::NotAPermutation { generator, .. } => vec![*generator],
            Error::IndexOutOfRange { index, .. } => vec![*index],
            Error::NotACocycle { witness } => witness.clone(),
            Error::NotAHomomorphism { a, b } | Error::NotCommuting { a, b } => vec![*a, *b],
            Error::NotPairwiseCommuting { tuple } | Error::IncompleteTable { tuple } => tuple.clone(),
            Error::NotInCentralizer { element, base } => vec![*element, *base],
            Error::ClassEscape { rep, element } => vec![*rep, *element],
            Error::SizeMismatch { left, right } => vec![*left, *right],
            Error::ArityMismatch { expected, found } => vec![*expected, *found],
            Error::UnsupportedArity(n) => vec![*n],
            Error::ClosureTooLarge { .. } | Error::TooLarge { .. } | Error::Overflow | Error::Parse(_) => vec![],
        }
    }
}
