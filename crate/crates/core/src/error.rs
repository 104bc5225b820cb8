use thiserror::Error;

/// Errors raised by graph construction, parsing and the exact searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid multipole: {0}")]
    InvalidMultipole(String),

    #[error("graph is not cubic: {0}")]
    NotCubic(String),

    #[error("connector size mismatch: {left} vs {right}")]
    ConnectorSizeMismatch { left: usize, right: usize },

    #[error("arity mismatch: vertex has {expected} edge-ends, supermultipole offers {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("no such connector {0}")]
    NoSuchConnector(usize),

    #[error("no such vertex {0}")]
    NoSuchVertex(usize),

    #[error("no such edge {0}")]
    NoSuchEdge(usize),

    #[error("cannot substitute a loop (edge {0})")]
    LoopSubstitution(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("graph is acyclic")]
    Acyclic,

    #[error("graph has no perfect matching")]
    NoPerfectMatching,

    #[error("no perfect matching contains edge {0}")]
    NoMatchingThroughEdge(usize),

    #[error("graph has a bridge (edge {0})")]
    Bridged(usize),

    #[error("graph is not a snark: {0}")]
    NotASnark(String),

    #[error("exceptional graph for cyclic connectivity: {0}")]
    ExceptionalGraph(String),

    #[error("graph too large for this operation: {0}")]
    TooLarge(String),

    #[error("ill-formed partial colouring: {0}")]
    IllFormedColouring(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("certificate mismatch: {0}")]
    CertificateMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
