use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("objects live over different variable universes")]
    UniverseMismatch,

    #[error("monomial uses variable index {0} outside the universe")]
    VariableOutOfRange(usize),

    #[error("at most 64 variables are supported, got {0}")]
    TooManyVariables(usize),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} budget of {limit} exceeded")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("invalid elementary collapse: {0}")]
    InvalidCollapse(String),

    #[error("variable `{0}` lies in the ideal")]
    VariableInIdeal(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph is not a forest")]
    NotAForest,

    #[error("graph does not have exactly one independent cycle (h1 = {0})")]
    NotUnicyclic(i64),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
