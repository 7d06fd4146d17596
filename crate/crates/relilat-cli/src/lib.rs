//! Library side of the `relilat` binary: spec-file parsing and the command
//! implementations, kept out of `main.rs` so tests can drive them directly.

pub mod commands;
pub mod specfile;

/// Failures grouped by exit code. `Verification` still carries the table
/// produced so far; the caller prints it before exiting nonzero.
#[derive(Clone, Debug, PartialEq)]
pub enum CliError {
    Parse(String),
    Validation(String),
    Numerical(String),
    Verification { output: String, failures: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Verification { .. } => 4,
        }
    }

    /// Single-line diagnostic with a stable machine-scannable prefix.
    pub fn diagnostic(&self) -> String {
        match self {
            CliError::Parse(msg) => format!("error: parse: {msg}"),
            CliError::Validation(msg) => format!("error: validation: {msg}"),
            CliError::Numerical(msg) => format!("error: numerical: {msg}"),
            CliError::Verification { failures, .. } => {
                format!("error: verification: {failures} point(s) outside 3 standard errors")
            }
        }
    }
}
