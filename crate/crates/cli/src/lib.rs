//! Std companion to `matpow-core`: matrix file formats, JSON reports,
//! parallel drivers for search and the exhaustive oracle, and the `matpow`
//! command line.

pub mod cli;
pub mod error;
pub mod format;
pub mod parallel;
pub mod report;

pub use crate::error::{CliError, ExitKind};
