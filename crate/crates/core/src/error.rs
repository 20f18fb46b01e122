use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    /// The input lies outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index {index} out of range {min}..={max}")]
    IndexOutOfRange { index: i64, min: i64, max: i64 },
}

impl CfError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        CfError::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, CfError>;
