//! Command-line harness around `multiboost`: CSV ingestion, runs, trace
//! files and the reports built from them.

pub mod analyze;
pub mod cli;
pub mod config;
pub mod error;
pub mod ingest;
pub mod output;
pub mod run;
pub mod study;
pub mod trace_file;

pub use cli::{configure_threads, execute, Cli};
pub use config::{AlgoChoice, RunConfig};
pub use error::{CliError, CliResult};
pub use trace_file::TraceFile;
