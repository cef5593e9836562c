use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inputs outside an operation's domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An enumeration or field construction larger than the configured budget.
    #[error("{what} requires {required}, exceeding the budget of {budget}")]
    Resource {
        what: String,
        required: String,
        budget: String,
    },

    /// A postcondition that can only fail through a transcription or arithmetic bug.
    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn resource(
        what: impl Into<String>,
        required: impl ToString,
        budget: impl ToString,
    ) -> Self {
        Error::Resource {
            what: what.into(),
            required: required.to_string(),
            budget: budget.to_string(),
        }
    }
}
