//! File IO, configuration, report formats and command implementations for
//! the `sentilex` tool. The algorithms live in `sentilex-core`.

pub mod commands;
pub mod config;
pub mod corpus;
pub mod error;
pub mod output;
pub mod report;

pub use commands::{cmd_build, cmd_evaluate, cmd_score, load_lexicon};
pub use config::{Command, ReportFormat, RunConfig};
pub use error::Error;
