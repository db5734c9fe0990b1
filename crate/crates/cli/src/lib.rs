//! Experiment harness for wmoFSS: configuration, reproducible multi-run
//! experiments, result files, statistical comparison and the published
//! reference tables.

pub mod compare;
pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod published;

pub use config::{IgdReference, RunConfig};
pub use error::{HarnessError, Result};
pub use experiment::{execute, run_experiment, write_result, PerRun, RunResult};
