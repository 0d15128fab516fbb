//! Monte Carlo harness: configuration, experiment runners, statistics,
//! output files, and the CLI entry point.

pub mod cli;
pub mod config;
pub mod output;
pub mod runner;
pub mod stats;
pub mod tables;

pub use config::{ConfigError, ExperimentConfig};
pub use runner::{
    run_cdf_experiment, run_dwell_experiment, run_tradeoff_experiment, PatternLabel, RunError,
};
pub use stats::EmpiricalDistribution;
pub use tables::PairTables;
