//! Command-line front end and experiment harness for `densekit`.

pub mod app;
pub mod harness;
pub mod input;
pub mod report;

pub use app::run_cli;
pub use report::ExperimentReport;
