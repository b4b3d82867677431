use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("direction ({0}, {1}) is not primitive")]
    NonPrimitiveDirection(i64, i64),

    #[error("unknown step-set family `{0}`")]
    UnknownFamily(String),

    #[error("truncation of `{0}` contains no steps")]
    EmptyTruncation(String),

    #[error("a length bound (max_len) is required: {0}")]
    MissingMaxLen(String),

    #[error("work budget exhausted in {what}: needs about {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        budget: u64,
    },

    #[error("coordinate overflow: {0}")]
    Overflow(String),

    #[error("constraint is not a submonoid: {0}")]
    NotSubmonoid(String),

    #[error("hierarchy violation: {0}")]
    Hierarchy(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("spec error: {0}")]
    Spec(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("oeis network failure: {0}")]
    Network(String),

    #[error("oeis fixture missing for terms {0}")]
    MissingFixture(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 2,
            Error::Network(_) => 3,
            _ => 1,
        }
    }

    pub(crate) fn budget(what: &'static str, needed: impl ToString, budget: u64) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            budget,
        }
    }
}
