//! Sweeps over time, output files and the command-line front end.

pub mod cli;
pub mod config;
pub mod figures;
pub mod output;
mod sweep;

pub use sweep::{
    evolve_covariance, run_sweep, OutputFormat, SweepConfig, SweepResult, BISECTION_STEPS,
};
