//! Command-line driver for the `bec-probe-core` kernels: the run
//! configuration format, parallel execution of traces, sweeps and crossover
//! searches, result files, and the built-in oracle suite.

pub mod config;
pub mod error;
pub mod output;
pub mod run;
pub mod validate;

pub use config::{load, parse_config, RunConfig};
pub use error::{Error, Result};

/// The companion parameter file shipped with the crate.
pub const COMPANION_CONFIG: &str = include_str!("../configs/rb87-companion.toml");
