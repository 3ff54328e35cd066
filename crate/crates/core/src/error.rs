use thiserror::Error;

use crate::subset::Subset;
use crate::word::Word;

/// Errors raised by the library.
///
/// Variants that describe an "internal inconsistency" flag either an engine bug
/// or input data that claims properties it does not have. They carry witnesses
/// so that they can be inspected rather than silently skipped.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("solution is not bijective")]
    NotBijective,

    #[error("solution is not left non-degenerate")]
    NotLeftNonDegenerate,

    #[error("the two expressions for sigma disagree at z={z}, x={x}")]
    SigFormulaMismatch { z: usize, x: usize },

    #[error("lambda/sigma intertwining fails at x={x}, y={y}")]
    IntertwiningViolation { x: usize, y: usize },

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("budget exceeded at degree {degree}: needs {required}, budget is {budget}")]
    BudgetExceeded {
        degree: usize,
        required: u128,
        budget: u128,
    },

    #[error("letter {letter} out of range for n={n}")]
    LetterOutOfRange { letter: usize, n: usize },

    #[error("wrong presentation kind for this operation: {0}")]
    WrongPresentation(&'static str),

    #[error("no ordered word x1^k1...xn^kn in the class of {0}")]
    NoOrderedForm(Word),

    #[error("subset {0} is not invariant (not in the Z-family)")]
    ZNotInvariant(Subset),

    #[error("subset {0} is neither empty nor in the Z-family")]
    NotInZFamily(Subset),

    #[error("cocycle violation: {0}")]
    CocycleViolation(String),

    #[error("phi is not constant on a class: {0}")]
    PhiIllDefined(String),

    #[error("power factorization fails for generator {x} at exponent {exponent}")]
    FactorizationViolation { x: usize, exponent: usize },

    #[error("closure leaves the Z-family: {witness} (from {origin})")]
    ClosureLeavesZ { witness: Subset, origin: Subset },

    #[error("strata violation: {0}")]
    StrataViolation(String),

    #[error("dimension mismatch at degree {degree}: got {got}, expected {expected}")]
    DimensionMismatch {
        degree: usize,
        got: usize,
        expected: usize,
    },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
