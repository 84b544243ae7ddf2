use thiserror::Error;

use crate::table::Witness;

/// Errors raised by parsers, constructors and checkers with preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: duplicate name `{name}`")]
    DuplicateName { line: usize, name: String },

    #[error("line {line}: expected {expected} entries, found {found}")]
    WidthMismatch { line: usize, expected: usize, found: usize },

    #[error("expected {expected} rows, found {found}")]
    RowCountMismatch { expected: usize, found: usize },

    #[error("line {line}: unknown token `{token}`")]
    UnknownToken { line: usize, token: String },

    /// A binary operation must be a non-empty prefunction.
    #[error("operation is undefined everywhere")]
    EmptyOperation,

    /// A prefunction must have a non-empty domain.
    #[error("map has an empty domain")]
    EmptyMap,

    #[error("codomain does not contain the image of the map")]
    CodomainTooSmall,

    #[error("{what} of size {size} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("index {index} out of range for a structure of size {size}")]
    OutOfRange { index: usize, size: usize },

    #[error("map is not a member of the map magma")]
    NotMember,

    #[error("map magma members must be {expected}")]
    WrongMemberKind { expected: &'static str },

    #[error("operation requires {expected} composition, magma uses {found}")]
    ModeMismatch {
        expected: &'static str,
        found: &'static str,
    },

    /// A checked precondition does not hold; the witness shows why.
    #[error("not a {class}: {witness}")]
    Precondition { class: &'static str, witness: Witness },

    /// A theorem-backed post-condition failed. Never expected.
    #[error("internal verification failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
