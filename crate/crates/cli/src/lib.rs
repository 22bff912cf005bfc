//! Bundle files, the built-in catalog and the `xalg` command line.

pub mod bundle;
pub mod catalog;
pub mod cli;
pub mod emit;
pub mod format;
pub mod registry;
pub mod report;
pub mod resolve;

pub use cli::run_command;
