use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the command-line layer, with process exit codes:
/// 2 for anything wrong with the input, 1 for a computation that started
/// and failed (including consensus failures), 0 reserved for success.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    /// A structurally invalid input that is not tied to one file, such as
    /// a suite fixture with two input variants or a mismatched `-N`.
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] sigsurf_core::Error),

    /// Verification ran engines that disagree on the signature.
    #[error("engines disagree: {0}")]
    Consensus(String),

    /// Every engine in a race or verification failed.
    #[error("all engines failed: {0}")]
    AllEnginesFailed(String),

    /// The input routes to no engine for the requested computation.
    #[error("no engine accepts this input")]
    NoApplicableEngine,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use sigsurf_core::Error as Core;
        match self {
            CliError::Io { .. }
            | CliError::Json { .. }
            | CliError::Input(_)
            | CliError::NoApplicableEngine => 2,
            CliError::Consensus(_) | CliError::AllEnginesFailed(_) => 1,
            CliError::Core(core) => match core {
                Core::Overflow(_)
                | Core::Cancelled
                | Core::NonIntegerSignature { .. }
                | Core::IterationLimit { .. } => 1,
                _ => 2,
            },
        }
    }
}
