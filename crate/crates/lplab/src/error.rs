use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {message}")]
    InvalidParameter { field: &'static str, message: String },

    #[error("gap {index} = ({a}, {b}) overlaps its predecessor")]
    OverlappingGaps { index: usize, a: f64, b: f64 },

    #[error("gap ({a}, {b}) lies outside the window [{x0}, {x1}]")]
    GapOutsideWindow { a: f64, b: f64, x0: f64, x1: f64 },

    #[error("gap ({a}, {b}) has non-positive length")]
    EmptyGap { a: f64, b: f64 },

    #[error("length decay violated at index {index}: {value} >= {limit} (need l_{{k+1}} < l_k/2)")]
    DecayViolation { index: usize, value: f64, limit: f64 },

    #[error("gap sequence sums to {sum}, expected {expected} within {tolerance}")]
    NotNormalized { sum: f64, expected: f64, tolerance: f64 },

    #[error("no feasible shift in (-{delta}, {delta}): translated components cover {covered:.6e} of it")]
    ShiftInfeasible { delta: f64, covered: f64 },

    #[error("no splitting shift found down to |xi| resolution {floor:.3e}; points {first} and {second} always share gap {gap_index}")]
    SplitShiftExhausted { floor: f64, first: f64, second: f64, gap_index: usize },

    #[error("exact chain search supports n <= {max_n} and at most {max_points} points (got n = {n}, {points} points); pass heuristic mode for larger instances")]
    ChainSearchTooLarge { n: usize, points: usize, max_n: usize, max_points: usize },

    #[error("psi family does not satisfy psi(delta)/delta -> +inf: {reason}")]
    PsiDivergence { reason: String },

    #[error("grid size {m} aliases frequency {freq} (need m >= {required})")]
    Aliasing { m: usize, freq: i64, required: usize },

    #[error("frequency bin {bin} lies on a component of the scaled set but carries a nonzero coefficient ({magnitude:.3e})")]
    AmbiguousBin { bin: i64, magnitude: f64 },

    #[error("no admissible frequency bins inside the scaled gaps")]
    NoAdmissibleBins,

    #[error("gap-set file schema mismatch: expected version {expected}, found {found}")]
    SchemaMismatch { expected: u32, found: u32 },

    #[error("unreliable request: {0}")]
    Unreliable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(field: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter { field, message: message.into() }
    }
}
