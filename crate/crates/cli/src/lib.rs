//! Library side of the `hindex` command: table builders, output formatting
//! and the reproduction checks.

pub mod commands;
pub mod format;
pub mod verify;
