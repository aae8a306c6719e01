use thiserror::Error;

pub type Result<T> = std::result::Result<T, HistoError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HistoError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("mock-Chebyshev degree {m} exceeds the maximum {max} for n = {n}")]
    DegreeTooLarge { n: usize, m: usize, max: usize },

    /// Two Chebyshev-Lobatto targets snapped to the same grid node.
    #[error("internal consistency: mock-Chebyshev nodes {first} and {second} coincide")]
    NonDistinctSelection { first: usize, second: usize },

    #[error("Chebyshev roots {first} and {second} fall in the same equispaced segment {segment}")]
    NonDistinctSegments {
        first: usize,
        second: usize,
        segment: usize,
    },

    #[error("degenerate segment {index}: [{a}, {b}]")]
    DegenerateSegment { index: usize, a: f64, b: f64 },

    #[error("segments {first} and {second} overlap")]
    OverlappingSegments { first: usize, second: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix: zero pivot in column {column}")]
    SingularMatrix { column: usize },

    #[error("singular KKT matrix (zero pivot in column {column})")]
    SingularKkt { column: usize },

    #[error("segment set is not unisolvent for the requested degree")]
    UnisolvenceViolation,

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("data generation failed on segment {index}: {message}")]
    DataGeneration { index: usize, message: String },

    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl HistoError {
    /// Short machine-readable tag used in experiment artifacts.
    pub fn kind(&self) -> &'static str {
        match self {
            HistoError::InvalidParameter(_) => "invalid-parameter",
            HistoError::DegreeTooLarge { .. } => "degree-too-large",
            HistoError::NonDistinctSelection { .. } => "non-distinct-selection",
            HistoError::NonDistinctSegments { .. } => "non-distinct-segments",
            HistoError::DegenerateSegment { .. } => "degenerate-segment",
            HistoError::OverlappingSegments { .. } => "overlapping-segments",
            HistoError::DimensionMismatch(_) => "dimension-mismatch",
            HistoError::SingularMatrix { .. } => "singular-matrix",
            HistoError::SingularKkt { .. } => "singular-kkt",
            HistoError::UnisolvenceViolation => "unisolvence-violation",
            HistoError::InvalidConfiguration(_) => "invalid-configuration",
            HistoError::DataGeneration { .. } => "data-generation",
            HistoError::Parse { .. } => "parse",
            HistoError::Io(_) => "io",
        }
    }

    /// Errors caused by bad user input rather than a failing method.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            HistoError::Parse { .. }
                | HistoError::Io(_)
                | HistoError::OverlappingSegments { .. }
                | HistoError::InvalidConfiguration(_)
                | HistoError::InvalidParameter(_)
        )
    }
}

impl From<std::io::Error> for HistoError {
    fn from(e: std::io::Error) -> Self {
        HistoError::Io(e.to_string())
    }
}
