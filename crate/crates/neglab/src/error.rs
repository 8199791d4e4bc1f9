use std::path::PathBuf;

use neglab_core::ValidationReport;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const FAILURE: i32 = 3;
    pub const USAGE: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid distribution #{position}: sum error {}, out-of-range indices {:?}", .report.sum_error, .report.bad_indices)]
    Validation {
        position: usize,
        values: Vec<f64>,
        report: ValidationReport,
    },

    #[error("{0}")]
    Core(#[from] neglab_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {reason}")]
    FileFormat { path: PathBuf, reason: String },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            _ => exit::INPUT,
        }
    }

    pub(crate) fn parse(token: &str, reason: impl Into<String>) -> Self {
        CliError::Parse {
            token: token.to_string(),
            reason: reason.into(),
        }
    }
}
