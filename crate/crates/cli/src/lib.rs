//! Command-line front end for `cstar-core`: scenario files with a small
//! expression language, command dispatch and CSV/JSON reports.

pub mod args;
pub mod dispatch;
pub mod error;
pub mod expr;
pub mod report;
pub mod scenario;

pub use args::Cli;
pub use error::{CliError, ReportError};
pub use expr::Expr;
pub use scenario::{parse_scenario, Diagnostic, Diagnostics, ScenarioFile};
