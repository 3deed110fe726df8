//! Library half of the `urnkit` command-line tool.

pub mod commands;
pub mod error;
pub mod spec;

pub use commands::{Overrides, Report};
pub use error::{CliError, SpecError};
pub use spec::{Problem, ProblemSpec};
