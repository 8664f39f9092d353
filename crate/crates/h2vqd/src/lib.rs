//! File formats, sweeps and the command-line front end for `h2vqd-core`.
//!
//! - [`table`]: coefficient CSV files, including the bundled H₂ table.
//! - [`curve`]: parallel energy-versus-R sweeps and the curve CSV.
//! - [`manifest`]: the JSON run record written next to each output.
//! - [`plot`]: gnuplot script and data generation from a curve CSV.
//! - [`cli`]: the `h2vqd` subcommands.

pub mod cli;
pub mod curve;
pub mod error;
pub mod manifest;
pub mod plot;
pub mod table;

pub use error::{AppError, Result};
