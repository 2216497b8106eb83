//! Scenario runner: parses TOML scenario files, runs the requested tasks
//! against `swan-core` and renders JSON reports and text tables.

pub mod error;
pub mod explain;
pub mod report;
pub mod run;
pub mod scenario;

pub use error::CliError;
pub use report::Report;
pub use run::{run, RunOptions, RunOutcome};
pub use scenario::{Scenario, Task};
