use thiserror::Error;

/// Every failure the CLI reports, split by exit code.
#[derive(Debug, Error)]
pub enum WorkbenchError {
    /// Bad input, or a computed result that contradicts a checked claim.
    #[error("{0}")]
    Invalid(String),
    /// A completion cap or other resource limit was hit.
    #[error("{0}")]
    Resource(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl WorkbenchError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        WorkbenchError::Invalid(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            WorkbenchError::Invalid(_) | WorkbenchError::Io { .. } => 1,
            WorkbenchError::Resource(_) => 2,
        }
    }
}

impl From<bmw_core::ParamError> for WorkbenchError {
    fn from(e: bmw_core::ParamError) -> Self {
        WorkbenchError::Invalid(e.to_string())
    }
}

impl From<bmw_core::ScalarError> for WorkbenchError {
    fn from(e: bmw_core::ScalarError) -> Self {
        WorkbenchError::Invalid(e.to_string())
    }
}

impl From<bmw_core::combinatorics::CombError> for WorkbenchError {
    fn from(e: bmw_core::combinatorics::CombError) -> Self {
        WorkbenchError::Invalid(e.to_string())
    }
}

impl From<bmw_core::presentation::BuildError> for WorkbenchError {
    fn from(e: bmw_core::presentation::BuildError) -> Self {
        use bmw_core::presentation::BuildError;
        match e {
            BuildError::Completion(c) => WorkbenchError::Resource(c.to_string()),
            other => WorkbenchError::Invalid(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, WorkbenchError>;
