//! Library side of the `arraygraph` command: the graph file format, the
//! random generator and the subcommand bodies.

pub mod commands;
pub mod format;
pub mod gen;

use std::io;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const NOT_FOUND: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const DATA: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, #[source] io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Bound { line: usize, msg: String },
    #[error(transparent)]
    Core(#[from] arraygraph::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            _ => exit::DATA,
        }
    }
}
