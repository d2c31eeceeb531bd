//! Library side of the `logbundle` command: the analysis report, its cache
//! and the built-in corpus.

pub mod cache;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod fuzzing;
pub mod report;

pub use error::{CliError, CliResult};
pub use report::{AnalysisReport, AnalyzeOptions};
