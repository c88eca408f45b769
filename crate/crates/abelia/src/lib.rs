//! Standard-library companion to `abelia-core`: multi-threaded drivers, the
//! binary coefficient cache, record output, verification suites and the
//! command line.

pub mod cache;
pub mod cli;
pub mod error;
pub mod output;
pub mod parallel;
pub mod rows;
pub mod verify;

pub use error::{AppError, AppResult};
