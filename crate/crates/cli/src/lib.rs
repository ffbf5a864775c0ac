//! Command-line front end for the four-level cross-Kerr analysis.
//!
//! Every command reads one flat JSON configuration and produces a [`Table`]
//! (or a JSON record for `kerr`). Output is byte-deterministic: fixed
//! headers, floats written with 17 significant digits, rows in input order.

pub mod commands;
pub mod config;
pub mod table;

use thiserror::Error;

pub use commands::{run, run_converge, run_evolve, run_kerr, run_spectrum, run_sweep, Output};
pub use config::{Command, ConfigFile, Format, RunConfig};
pub use table::{Cell, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] kerr4ls_core::Error),
}

impl CliError {
    /// 2 config, 3 physics guard, 4 solver.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Core(e) if e.is_physics_guard() => 3,
            CliError::Core(kerr4ls_core::Error::NoConvergence { .. })
            | CliError::Core(kerr4ls_core::Error::NotHermitian { .. }) => 4,
            CliError::Core(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            3 => "physics_guard",
            4 => "solver",
            _ => "config",
        }
    }

    /// Single-line JSON error record for standard error.
    pub fn to_record(&self) -> String {
        let code = match self {
            CliError::Core(e) => e.code(),
            CliError::Config(_) => "CONFIG",
            CliError::Io(_) => "IO",
        };
        serde_json::json!({
            "error": {
                "kind": self.kind(),
                "code": code,
                "exit_code": self.exit_code(),
                "message": self.to_string(),
            }
        })
        .to_string()
    }
}
