//! Library surface of the `terncorr` binary: command implementations are
//! exposed so integration tests can drive them in-process with literal
//! configurations instead of reparsing argv.

pub mod checks;
pub mod commands;
pub mod config;
pub mod output;
pub mod report;
pub mod sampler;

pub use commands::{execute, open_session, Session};
pub use config::{CliError, Mode, Outcome, OutputFormat, PathChoice, RunConfig, TauSelect};
