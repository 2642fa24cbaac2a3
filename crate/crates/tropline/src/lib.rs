//! File formats, SVG rendering, seeded instance generators and the command-line front end
//! for [`tropline_core`].

pub mod cli;
pub mod error;
pub mod format;
pub mod generate;
pub mod repro;
pub mod svg;

pub use error::{CliError, CliResult};
pub use tropline_core;
