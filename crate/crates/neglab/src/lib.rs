//! Command-line front end and file formats for [`neglab_core`].
//!
//! Subcommands: `negate`, `entropy`, `converge`, `verify`, `dissim` and
//! `report`. See [`output`] for the document schema and [`input`] for the
//! accepted distribution syntax.

pub mod cli;
pub mod commands;
pub mod error;
pub mod fixtures;
pub mod input;
pub mod output;

pub use cli::run;
pub use error::{exit, CliError};
