//! Configuration, orchestration and report emission for the `ddl` command.

pub mod config;
pub mod run;

pub use config::{parse_config, validate, Command, Experiment, ExperimentConfig, Task};
pub use run::{execute, run, RunReport};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cli: cannot parse configuration: {0}")]
    Parse(String),
    #[error("cli: invalid configuration: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("{command} failed in module {}: {source}", source.module())]
    Core { command: String, source: ddl_core::Error },
    #[error("cli: i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// 2 for bad input, 3 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Validation(_) => 2,
            CliError::Core { source, .. } if source.is_precondition() => 2,
            CliError::Core { .. } | CliError::Io(_) => 3,
        }
    }
}

/// Runs `f` on a pool of `workers` threads, or the global pool when `None`.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(CliError::Validation(vec!["--workers must be positive".into()])),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build().map_err(|e| CliError::Io(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}
