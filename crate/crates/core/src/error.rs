use thiserror::Error;

/// Errors raised by grid operations, parameter validation, block
/// constructors and builders.
///
/// Mathematical failures of the defining conditions are never errors; they
/// are reported by [`crate::verify`]. Errors signal malformed inputs or
/// violated contracts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension must be positive, got {0}")]
    NonPositiveDimension(i64),
    #[error("cell ({row},{col}) outside {rows}x{cols} grid")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("entry at ({row},{col}) must be nonzero")]
    ZeroEntry { row: usize, col: usize },
    #[error("cell ({row},{col}) already filled")]
    CellOccupied { row: usize, col: usize },
    #[error("shift amount must be positive, got {0}")]
    NonPositiveShift(i64),
    #[error("grids have different sizes: {0}x{1} vs {2}x{3}")]
    SizeMismatch(usize, usize, usize, usize),
    #[error("parameters overflow the exact integer range: {0}")]
    Overflow(String),
    #[error("arithmetic overflow while shifting entry at ({row},{col})")]
    ShiftOverflow { row: usize, col: usize },
    #[error("family hypothesis violated: {0}")]
    FamilyHypothesis(String),
    #[error("argument {arg}: expected a {expected}, got {got}")]
    WrongSetShape {
        arg: &'static str,
        expected: String,
        got: String,
    },
    #[error("parameters inadmissible: {0}")]
    Inadmissible(String),
    #[error("parameters outside this builder's case: {0}")]
    WrongCase(String),
    #[error("interval carving failed: {0}")]
    PartitionInfeasible(String),
    #[error("base array is not a valid five-per-line square: {0}")]
    InvalidBase(String),
    #[error("base array skeleton mismatch at cell ({0},{1})")]
    SkeletonMismatch(usize, usize),
    #[error("fold collision: two source cells map to ({0},{1})")]
    FoldCollision(usize, usize),
    #[error("input set fails verification: {0}")]
    InvalidInput(String),
    #[error("solver: {0}")]
    Solver(String),
    #[error("base array of order {order} unavailable: {reason}")]
    BaseUnavailable { order: usize, reason: String },
    #[error("malformed document: {0}")]
    Format(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
