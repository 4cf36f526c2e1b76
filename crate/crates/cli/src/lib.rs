//! Front end for the `cfmm` binary: argument parsing, file formats and the
//! five subcommands.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | file could not be read or written |
//! | 2 | invalid parameters or input data (also command-line usage errors) |
//! | 3 | geometry too steep for the tree (`LipschitzTooLarge`) |
//! | 4 | more expansion terms needed than the cap allows (`TermLimitExceeded`) |
//! | 5 | other numerical failure |
//! | 6 | `check --tol` exceeded |

pub mod commands;
pub mod format;

use cfmm::FmmError;
use thiserror::Error;

pub use commands::{run, Cli};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}: {1}")]
    Format(String, String),
    #[error(transparent)]
    Fmm(#[from] FmmError),
    #[error("relative error {0:e} exceeds tolerance {1:e}")]
    CheckFailed(f64, f64),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Usage(_) | CliError::Format(..) => 2,
            CliError::Fmm(e) => match e {
                FmmError::InvalidInput(_)
                | FmmError::CoincidentPoints(..)
                | FmmError::DuplicateRealParts(..)
                | FmmError::DegeneratePoint(_) => 2,
                FmmError::LipschitzTooLarge { .. } => 3,
                FmmError::TermLimitExceeded { .. } => 4,
                _ => 5,
            },
            CliError::CheckFailed(..) => 6,
        }
    }
}
