//! Command-line harness around `postulate`: seeded teleportation and algorithm
//! runs under either measurement semantics, reported as JSON or text.
//!
//! Every trial draws from its own ChaCha8 stream derived from `(seed, trial)`,
//! so a report depends only on its [`RunConfig`].

pub mod config;
pub mod report;
mod run;

pub use config::{Cli, CommandConfig, Format, RunConfig};
pub use report::{emit_report, parse_report, RunReport, Trial, SCHEMA};
pub use run::{parse_observable, run, trial_rng};

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    /// Strict semantics refused to assign a post-measurement state.
    pub const BLOCKED: u8 = 2;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Engine(#[from] postulate::Error),
}

pub fn exit_code(report: &RunReport) -> u8 {
    if report.is_blocked() {
        exit::BLOCKED
    } else {
        exit::OK
    }
}
