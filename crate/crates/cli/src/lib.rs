//! Command-line front end: model files in, deterministic reports out.

pub mod analyze;
pub mod error;
pub mod input;
pub mod report;
pub mod selftest;

pub use error::CliError;
pub use report::VERSION;
