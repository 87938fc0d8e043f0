//! Command-line front end: argument handling lives in the binary, rendering
//! and the subcommands live here so they can be tested directly.

pub mod commands;
pub mod render;

pub use commands::{cmd_eval, cmd_table, cmd_verify, Outcome};
pub use render::{EvalRecord, OutputFormat};
