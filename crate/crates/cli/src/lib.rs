//! Batch front end for the wfcoalg workbench: a plain-text specification
//! format, the report-producing commands and the bundled demos.

pub mod commands;
pub mod demos;
pub mod spec;

pub use commands::{run_command, Command, Options, Report};
pub use spec::{parse_spec, render_spec, SpecDocument, SpecError};
