use thiserror::Error;

/// Errors raised by the constructions and audits in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for segment of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("grid has {cols} columns; at most {max} are supported")]
    TooManyColumns { cols: usize, max: usize },

    #[error("ground set of size {size} exceeds the supported maximum {max}")]
    TooLarge { size: usize, max: usize },

    #[error("class id {class} is not below the class count {count}")]
    ClassOutOfRange { class: usize, count: usize },

    #[error("coloring is partial: cell ({row}, {col}) is unassigned")]
    PartialColoring { row: usize, col: usize },

    #[error("block map has {found} blocks but the source grid has {expected} columns")]
    BlockCountMismatch { expected: usize, found: usize },

    #[error("invalid block map: {0}")]
    InvalidBlockMap(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no fresh point left in member {member} while selecting for round {round}{}",
        column.map(|c| format!(" (column {c})")).unwrap_or_default())]
    SelectionExhausted {
        member: usize,
        round: usize,
        column: Option<usize>,
    },

    #[error("no splitter found at round {round}{}",
        column.map(|c| format!(" (column {c})")).unwrap_or_default())]
    SplitterNotFound { round: usize, column: Option<usize> },

    #[error("witness degenerated: the second Ramsey set has {size} element(s)")]
    DegenerateWitness { size: usize },

    #[error("construction invariant breached: {0}")]
    InvariantBreach(String),

    #[error("point {point} lies in K of both {first} and {second}")]
    UniquenessBreach {
        point: usize,
        first: usize,
        second: usize,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("scenario `{name}` failed: {source}")]
    Scenario {
        name: String,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Short machine-readable tag used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::TooManyColumns { .. } => "too-many-columns",
            Error::TooLarge { .. } => "too-large",
            Error::ClassOutOfRange { .. } => "class-out-of-range",
            Error::PartialColoring { .. } => "partial-coloring",
            Error::BlockCountMismatch { .. } => "block-count-mismatch",
            Error::InvalidBlockMap(_) => "invalid-block-map",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::SelectionExhausted { .. } => "selection-exhausted",
            Error::SplitterNotFound { .. } => "splitter-not-found",
            Error::DegenerateWitness { .. } => "degenerate-witness",
            Error::InvariantBreach(_) => "invariant-breach",
            Error::UniquenessBreach { .. } => "uniqueness-breach",
            Error::ShapeMismatch(_) => "shape-mismatch",
            Error::Scenario { source, .. } => source.code(),
            Error::Parse(_) => "parse",
        }
    }

    /// Strips scenario wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Scenario { source, .. } => source.root(),
            e => e,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
