use std::path::Path;

use sparse_card::dsfm::DsfmError;
use sparse_card::flow::FlowError;
use sparse_card::plcover::PlError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    TooLarge(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// Process exit status: 1 internal, 2 invalid input, 3 size limit.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Internal(_) => 1,
            Self::Parse { .. } | Self::Validation(_) | Self::Io { .. } => 2,
            Self::TooLarge(_) => 3,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<DsfmError> for CliError {
    fn from(e: DsfmError) -> Self {
        let text = e.to_string();
        match e {
            DsfmError::TooLarge { .. }
            | DsfmError::Pl(PlError::TooLarge { .. })
            | DsfmError::Flow(FlowError::Overflow { .. }) => Self::TooLarge(text),
            DsfmError::Validation(_) | DsfmError::Pl(_) => Self::Validation(text),
            DsfmError::Flow(FlowError::Parse { .. }) => Self::Validation(text),
            DsfmError::Gadget(_) | DsfmError::Flow(_) => Self::Internal(text),
        }
    }
}

impl From<PlError> for CliError {
    fn from(e: PlError) -> Self {
        DsfmError::from(e).into()
    }
}

impl From<FlowError> for CliError {
    fn from(e: FlowError) -> Self {
        DsfmError::from(e).into()
    }
}
