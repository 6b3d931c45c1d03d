use std::fmt;
use std::io;
use std::path::PathBuf;

/// Failures of the command-line layer, each mapped to a process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, spec text or configuration.
    Usage(String),
    /// The solver ran and failed.
    Solver(volcano_core::Error),
    /// The finite-difference oracle cannot represent the problem.
    OracleInapplicable(String),
    Io {
        path: PathBuf,
        source: io::Error,
    },
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Solver(_) | CliError::Io { .. } | CliError::Output(_) => 3,
            CliError::OracleInapplicable(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Solver(e) => write!(f, "solver failed: {e}"),
            CliError::OracleInapplicable(msg) => write!(f, "oracle inapplicable: {msg}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Output(msg) => write!(f, "cannot write output: {msg}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Solver(e) => Some(e),
            CliError::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl From<volcano_core::Error> for CliError {
    fn from(e: volcano_core::Error) -> Self {
        use volcano_core::Error as E;
        match e {
            E::InvalidConfig(msg) | E::Parse(msg) | E::Domain(msg) => CliError::Usage(msg),
            E::OracleInapplicable(msg) => CliError::OracleInapplicable(msg),
            other => CliError::Solver(other),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
