//! Command-line front end for `stperiod-core`: argument parsing, JSON/CSV/text
//! rendering, a disk cache for enumerated growth series and the verification
//! suite.

pub mod cache;
pub mod config;
pub mod output;
pub mod run;
pub mod suite;

pub use config::{Command, Format, RunConfig};
pub use run::{run, RunError, RunOutput};
pub use suite::{run_suite, Check, Status, SuiteReport};
