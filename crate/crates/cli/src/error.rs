use thiserror::Error;

/// Stable exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_BLOW_UP: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {message}")]
    ConfigLine { line: usize, message: String },

    #[error("config: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error(transparent)]
    Core(#[from] oblab::Error),
}

impl CliError {
    /// Line 0 stands for "no line" (a value taken from the defaults).
    pub fn config(line: usize, message: impl Into<String>) -> Self {
        let message = message.into();
        if line == 0 {
            CliError::Config(message)
        } else {
            CliError::ConfigLine { line, message }
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use oblab::Error as E;
        match self {
            CliError::ConfigLine { .. } | CliError::Config(_) | CliError::Io { .. } => EXIT_CONFIG,
            CliError::CheckFailed(_) => EXIT_NUMERICAL,
            CliError::Core(e) => match e {
                E::BlowUp { .. } => EXIT_BLOW_UP,
                E::InvalidGrid(_) | E::InvalidParams(_) | E::InvalidArgument(_) | E::ComplexBranch { .. } => {
                    EXIT_CONFIG
                }
                _ => EXIT_NUMERICAL,
            },
        }
    }
}
