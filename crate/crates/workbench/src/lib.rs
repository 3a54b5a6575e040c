//! File formats, the `bmw` command-line surface and the acceptance suite
//! on top of `bmw-core`.

pub mod cli;
pub mod commands;
pub mod dump;
pub mod error;
pub mod params;
pub mod verify;

pub use error::{Result, WorkbenchError};
