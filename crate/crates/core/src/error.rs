use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Each variant carries a stable
/// machine-readable code (see [`Error::code`]).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("chart bounds violated: {0}")]
    Bounds(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("degenerate transformation: {0}")]
    DegenerateTransformation(String),
    #[error("test varieties do not determine the unknown invariants")]
    SingularSystem,
    #[error("calibration inputs are inconsistent or give a non-integral value: {0}")]
    NonIntegral(String),
    #[error("random linear section is degenerate after {0} attempts")]
    DegenerateSlice(usize),
    #[error("class computation needs the genus of a generic curve section")]
    MissingGenus,
    #[error("the solution set is not a proper subset (system is positive dimensional)")]
    PositiveDimensional,
    #[error("solutions meet the cuspidal boundary in a component of unexpected dimension")]
    UnsupportedCuspidalComponent,
    #[error("linear sections of this variety cannot be reduced to a supported counting route: {0}")]
    SliceNotSupported(String),
    #[error("invariant entry {0} is unknown but multiplies a nonzero partner")]
    UnknownEntryNeeded(usize),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid job: {0}")]
    Job(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier used in structured reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotDivisible => "NOT_DIVISIBLE",
            Error::UnknownVariable(_) => "UNKNOWN_VARIABLE",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::Bounds(_) => "BOUNDS_VIOLATION",
            Error::Degenerate(_) => "DEGENERATE",
            Error::DegenerateTransformation(_) => "DEGENERATE_TRANSFORMATION",
            Error::SingularSystem => "SINGULAR_SYSTEM",
            Error::NonIntegral(_) => "NON_INTEGRAL",
            Error::DegenerateSlice(_) => "DEGENERATE_SLICE",
            Error::MissingGenus => "MISSING_GENUS",
            Error::PositiveDimensional => "POSITIVE_DIMENSIONAL",
            Error::UnsupportedCuspidalComponent => "UNSUPPORTED_CUSPIDAL_COMPONENT",
            Error::SliceNotSupported(_) => "SLICE_NOT_SUPPORTED",
            Error::UnknownEntryNeeded(_) => "UNKNOWN_ENTRY_NEEDED",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::Job(_) => "INVALID_JOB",
            Error::Io(_) => "IO_ERROR",
        }
    }

    /// Process exit code for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 3,
            Error::Job(_) | Error::Io(_) => 2,
            _ => 1,
        }
    }
}
