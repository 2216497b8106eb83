use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: parse error: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("resource limit: {0}")]
    Resource(swan_core::Error),

    #[error("computation failed: {0}")]
    Computation(swan_core::Error),

    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// 0 ok, 1 false verdict, 2 usage (clap), 3 parse, 4 validation,
    /// 5 resource limit, 6 computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => 3,
            CliError::Validation(_) => 4,
            CliError::Resource(_) => 5,
            CliError::Computation(_) => 6,
        }
    }

    /// Classifies a core error raised while building scenario objects.
    pub fn invalid(e: swan_core::Error) -> Self {
        match e {
            swan_core::Error::ResourceLimit { .. } => CliError::Resource(e),
            e => CliError::Validation(e.to_string()),
        }
    }

    /// Classifies a core error raised while computing.
    pub fn computing(e: swan_core::Error) -> Self {
        match e {
            swan_core::Error::ResourceLimit { .. } => CliError::Resource(e),
            e => CliError::Computation(e),
        }
    }
}

pub const EXIT_FALSE_VERDICT: i32 = 1;
