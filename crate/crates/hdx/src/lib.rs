//! Command-line front end and file formats for `hdx-core`.

pub mod cli;
pub mod format;
pub mod report;
pub mod suite;
