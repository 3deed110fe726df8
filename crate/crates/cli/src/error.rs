use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    /// TOML syntax or type errors; the message carries the line and column.
    #[error("{0}")]
    Parse(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("spec error: {0}")]
    Spec(#[from] SpecError),
    #[error("spec error: {0}")]
    Core(#[from] urnkit::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    /// A law or isometry check did not hold.
    #[error("assertion failed: {0}")]
    Assertion(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Assertion(_) => 1,
            _ => 2,
        }
    }
}
