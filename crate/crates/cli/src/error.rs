use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    /// Bad command line (clap's own code).
    pub const USAGE: u8 = 2;
    /// Invalid config file, grid or parameter.
    pub const CONFIG: u8 = 3;
    /// A formula or estimate has no finite value for the requested input.
    pub const DOMAIN: u8 = 4;
    /// Reading or writing a file failed.
    pub const IO: u8 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// Attaches the grid point or length at which a core error occurred.
    pub fn at(x_name: &str, x: f64, e: absorbance_core::Error) -> Self {
        let msg = format!("at {x_name} = {x}: {e}");
        if e.is_domain() {
            CliError::Domain(msg)
        } else {
            CliError::Config(msg)
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Domain(_) => exit::DOMAIN,
            CliError::Io(_) => exit::IO,
        }
    }
}

impl From<absorbance_core::Error> for CliError {
    fn from(e: absorbance_core::Error) -> Self {
        if e.is_domain() {
            CliError::Domain(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}
