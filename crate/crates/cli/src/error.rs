use std::fmt;

/// Failures of a command, each with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable input: polynomial, field, line or syzygy text.
    Parse(String),
    /// Parsed, but not a reduced homogeneous curve of degree at least 3.
    Rejected(String),
    /// Bad flag combination or unknown corpus name.
    Usage(String),
    /// The library refused or failed a computation.
    Library(logbundle::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Rejected(_) => 3,
            CliError::Library(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Rejected(m) => write!(f, "rejected: {m}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Library(e) => write!(f, "computation failed: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<logbundle::Error> for CliError {
    fn from(e: logbundle::Error) -> Self {
        use logbundle::Error as E;
        match e {
            E::Parse { .. } | E::InvalidField(_) => CliError::Parse(e.to_string()),
            E::NotHomogeneous | E::DegreeTooSmall(_) | E::NonReducedSuspected(_) | E::MdrZero => {
                CliError::Rejected(e.to_string())
            }
            other => CliError::Library(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
