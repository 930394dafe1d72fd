//! Command line, file formats and verification suites on top of
//! `ellfluct-core`.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod gamma;
pub mod json;
pub mod manifest;
pub mod mc;
pub mod suites;

pub use error::{CliError, CliResult};
