use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Input*` variants are caller mistakes (CLI exit code 1), `Internal` means a
/// structural invariant that the algorithms guarantee was violated (exit code 2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("invalid node pair: {0}")]
    InvalidPair(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("oracle refuses input: {0}")]
    OracleBound(String),

    #[error("more than {cap} simple paths exist")]
    PathCapExceeded { cap: usize },

    #[error("infeasible generator parameters: {0}")]
    InfeasibleConfig(String),

    #[error("internal invariant violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
