//! Command-line frontend for `coxlen-core`: input formats, a persistent
//! result cache, a multi-threaded deletion-set scan and the `coxlen` binary's
//! commands.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod error;
pub mod input;
pub mod parallel;
pub mod report;

pub use error::CliError;
