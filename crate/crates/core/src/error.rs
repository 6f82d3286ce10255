use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied an argument outside the operation's domain.
    #[error("invalid input: {0}")]
    Input(String),

    /// A generator-matrix file could not be parsed.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An enumeration or allocation would exceed its configured budget.
    #[error("resource limit exceeded: {what} requires {required}, budget is {budget}")]
    ResourceLimit {
        what: &'static str,
        required: String,
        budget: String,
    },

    /// The Margulis functional has no nonzero value (r exceeds the dimension).
    #[error("h_g{r} is identically zero on this code")]
    NoNonzeroValue { r: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn limit(
        what: &'static str,
        required: impl ToString,
        budget: impl ToString,
    ) -> Self {
        Error::ResourceLimit {
            what,
            required: required.to_string(),
            budget: budget.to_string(),
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
