//! Exact and asymptotic counting of monic trace-one cubics `t^3 - t^2 + a t + b`
//! with cyclic Galois group of order three.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure and
//! single-threaded; the range-based kernels (`*_range`, `*_segment`) are meant
//! to be driven in parallel by a std front end.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod constants;
pub mod counting;
pub mod cubic;
pub mod cyclo;
pub mod ddouble;
pub mod dirichlet;
pub mod enumerate;
mod error;

pub use arith::Factorization;
pub use constants::{ConstantsReport, EulerProductValue};
pub use counting::ReducibleCensus;
pub use cubic::{GaloisClass, TraceOneCubic};
pub use cyclo::{CycloElement, QuadraticData};
pub use dirichlet::CoefficientTable;

pub use ddouble::DoubleDouble;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
