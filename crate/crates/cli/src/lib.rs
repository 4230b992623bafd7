//! Command-line front end for the `gcgeom` library.
//!
//! A job is a command name plus a JSON [`doc::Document`]. Every run produces
//! a [`report::Report`] whose verdict maps to the exit code: `0` pass, `1`
//! fail with a counterexample, `2` malformed input or capacity exceeded.

pub mod commands;
pub mod doc;
pub mod error;
pub mod grammar;
pub mod input;
pub mod render;
pub mod report;
pub mod schema;

pub use commands::{run_job, Command, Options};
pub use report::{Format, Report, Verdict};
