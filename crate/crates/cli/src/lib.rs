//! Command-line driver for the entanglement Lyapunov control experiments:
//! config parsing, the `run`, `basin`, `mems`, `multi` and `validate`
//! commands, and CSV/JSON artifact writing.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{compute, execute, Options};
pub use config::CommandKind;
pub use error::{CliError, CliResult};
pub use output::Format;
