use std::fmt::Display;

/// Failures surfaced by the command-line tool, each mapped to an exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or inconsistent scenario input.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Model(#[from] cryolink_core::Error),

    #[error("{0}")]
    Io(String),
}

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

impl CliError {
    pub fn config(path: &str, err: impl Display) -> Self {
        CliError::Config(format!("{path}: {err}"))
    }

    pub fn io(what: impl Display, err: impl Display) -> Self {
        CliError::Io(format!("{what}: {err}"))
    }

    pub fn exit_code(&self) -> i32 {
        use cryolink_core::Error as E;
        match self {
            CliError::Config(_) => EXIT_VALIDATION,
            CliError::Model(E::Validation(_) | E::Unsupported(_)) => EXIT_VALIDATION,
            CliError::Model(E::Infeasible { .. }) => EXIT_INFEASIBLE,
            CliError::Model(E::Domain(_) | E::Range { .. }) => EXIT_NUMERIC,
            CliError::Io(_) => 1,
        }
    }
}
