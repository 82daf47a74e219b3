//! Command-line runner and file formats for the volumetric benchmark.
//!
//! The numerical work lives in [`volbench_core`]; this crate adds the
//! circuit / counts JSON formats, the survey dataset loader, a thread pool
//! executor, run reports and the `volbench` binary.

pub mod circuit_io;
pub mod cli;
pub mod counts_io;
pub mod dataset;
mod error;
pub mod executor;
pub mod run;

pub use error::FormatError;
pub use volbench_core as core;
