use thiserror::Error;

/// Why a full-support equalization system has no admissible solution.
#[derive(Debug, Clone, PartialEq)]
pub enum Infeasibility {
    /// The equalization equations have no solution at all (least-squares residual too large).
    Inconsistent { residual: f64 },
    /// The unique solution puts negative mass on some index.
    NegativeMass { index: usize, weight: f64 },
}

impl std::fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Infeasibility::Inconsistent { residual } => {
                write!(f, "system is inconsistent (residual {residual:e})")
            }
            Infeasibility::NegativeMass { index, weight } => {
                write!(f, "solution has negative mass {weight:e} at index {index}")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("empty {0}: at least one row and one column are required")]
    Empty(&'static str),
    #[error("offline cost of column {col} is {value}, must be > 0")]
    ZeroOfflineCost { col: usize, value: f64 },
    #[error("ratio at ({row}, {col}) is {value} < 1; set raw_game to allow it")]
    SubUnitRatio { row: usize, col: usize, value: f64 },
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("simplex exceeded the pivot limit of {limit}")]
    PivotLimitExceeded { limit: usize },
    #[error("no feasible equalizer: {0}")]
    NoFeasibleEqualizer(Infeasibility),
    #[error("singular equalization system (rank {rank} of {unknowns} unknowns) without a nonnegative minimum-norm solution")]
    SingularSystem { rank: usize, unknowns: usize },
    #[error("no equalizing saddle support found up to cardinality {max_support}")]
    NoSupportFound { max_support: usize },
    #[error("support enumeration refused: {candidates} candidate pairs exceeds the limit of {limit}")]
    EnumerationRefused { candidates: u128, limit: u128 },
    #[error("invalid problem specification: {0}")]
    InvalidSpec(String),
    #[error("invalid range [{lo}, {hi}]: need 1 <= lo <= hi")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
