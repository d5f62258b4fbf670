//! Std companion crate for the `bifour-core` spectral toolkit: file
//! formats, run configuration, the verification check catalog, and the
//! CLI plumbing.

pub mod config;
pub mod format;
pub mod symspec;
pub mod verify;

use std::fmt;

/// Errors surfaced by the harness: core numerics, IO, or parsing.
#[derive(Debug)]
pub enum HarnessError {
    Core(bifour_core::Error),
    Io(std::io::Error),
    Parse(String),
    UnknownCheck(String),
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Core(e) => write!(f, "{e}"),
            HarnessError::Io(e) => write!(f, "io error: {e}"),
            HarnessError::Parse(msg) => write!(f, "parse error: {msg}"),
            HarnessError::UnknownCheck(id) => write!(f, "unknown check id: {id}"),
        }
    }
}

impl std::error::Error for HarnessError {}

impl From<bifour_core::Error> for HarnessError {
    fn from(e: bifour_core::Error) -> Self {
        HarnessError::Core(e)
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
