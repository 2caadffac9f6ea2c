use std::path::Path;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] spectra_core::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}: {message}")]
    Input { path: String, line: usize, message: String },
    #[error("invalid argument: {0}")]
    Config(String),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), message: e.to_string() }
    }

    pub fn input(path: &Path, (line, message): (usize, String)) -> Self {
        CliError::Input { path: path.display().to_string(), line, message }
    }

    /// Extra guidance printed after the error, if any.
    pub fn advice(&self) -> Option<&'static str> {
        match self {
            CliError::Core(spectra_core::Error::MissedZero { .. }) => {
                Some("zeros were missed between scan points; rerun with a smaller --step")
            }
            _ => None,
        }
    }
}
