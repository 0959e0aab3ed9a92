use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("data: {0}")]
    Data(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 0 success, 1 usage/config, 2 data, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 1,
            CliError::Data(_) | CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Classifies a core error, prefixing `context`.
    pub(crate) fn from_core(context: impl std::fmt::Display, err: hqnn::Error) -> Self {
        use hqnn::Error as E;
        let msg = format!("{context}: {err}");
        match err {
            E::NonFinite(_) | E::NoConvergence(_) => CliError::Numerical(msg),
            E::InvalidSettings(_) => CliError::Config(msg),
            _ => CliError::Data(msg),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
