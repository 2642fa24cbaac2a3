use thiserror::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{what}: parse error at line {line}, column {column}: {message}")]
    Parse {
        what: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Domain(#[from] tropline_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// `2` for a well-posed input whose witness does not exist, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        use tropline_core::Error as E;
        match self {
            CliError::Domain(E::NoOrdinaryLineGuaranteed | E::HypothesisViolated(_)) => 2,
            _ => 1,
        }
    }
}
