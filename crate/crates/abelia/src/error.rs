use std::io;

use thiserror::Error;

/// Errors of the std front end.
#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] abelia_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("bad cache file: {0}")]
    Cache(String),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("output error: {0}")]
    Csv(#[from] csv::Error),
}

impl AppError {
    /// 1 when a computation contradicts itself, 2 for bad input or budgets.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Core(abelia_core::Error::Inconsistent(_)) => 1,
            _ => 2,
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
