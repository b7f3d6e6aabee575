use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("coroots inconsistent with roots: {0}")]
    InconsistentCoroots(String),
    #[error("unsupported group descriptor: {0}")]
    UnsupportedGroup(String),

    #[error("resource cap `{cap}` exceeded (limit {limit})")]
    CapExceeded { cap: &'static str, limit: usize },

    #[error("division by zero in cyclotomic field Q(zeta_{order})")]
    DivisionByZero { order: u32 },
    #[error("series is not invertible: {0}")]
    NonUnitSeries(String),
    #[error("series coefficient at eps^{0} lies beyond the truncation order")]
    Truncated(i32),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("malformed torsion element: {0}")]
    MalformedTorsion(String),
    #[error("Weyl element {0:?} does not index a fixed component")]
    NotInFixedIndex(Vec<usize>),
    #[error("weight does not extend to a character of the parabolic (Levi simple {0})")]
    WeightNotExtendable(usize),
    #[error("no generic cocharacter found after {0} attempts")]
    NonGenericCocharacter(usize),
    #[error("pole cancellation failed for component {word:?}: eps^{order} coefficient is nonzero")]
    PoleCancellation { word: Vec<usize>, order: i32 },
    #[error("Weyl denominator vanishes at a non-regular element")]
    SingularDenominator,

    #[error("invalid samples: {0}")]
    InvalidSamples(String),
    #[error("invalid job: {0}")]
    Job(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for this error when surfaced by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }
}
