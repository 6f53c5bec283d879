//! Command-line front end for `betadome`: argument handling, a parallel
//! dome sweep, and CSV / PPM writers.

pub mod app;
pub mod error;
pub mod format;
pub mod output;
pub mod parallel;

pub use error::CliError;
