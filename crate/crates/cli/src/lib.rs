//! Command-line front end for `paramodular-core`: JSON input schemas,
//! output formats and the command runner behind the `paramodular` binary.

pub mod output;
pub mod run;
pub mod schema;

pub use run::{run, Command, Example, JobOptions, JobSpec, OutputFormat, Outcome};
