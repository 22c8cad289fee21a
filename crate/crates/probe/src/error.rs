use std::path::PathBuf;

/// Errors of the command-line driver. [`Error::exit_code`] maps them onto the
/// process exit status.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: unknown key `{key}` in [{section}]{}", suggest(.suggestion))]
    UnknownKey { line: usize, section: String, key: String, suggestion: Option<String> },

    #[error("line {line}: `{key}` expects {expected}, got `{found}`")]
    UnitMismatch { line: usize, key: String, expected: &'static str, found: String },

    #[error("missing key `{key}` in [{section}]")]
    MissingKey { section: &'static str, key: &'static str },

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {}: {source}", .path.display())]
    ReadConfig { path: PathBuf, source: std::io::Error },

    #[error("{}: {source}", .path.display())]
    Write { path: PathBuf, source: std::io::Error },

    #[error("{}: {source}", .path.display())]
    Json { path: PathBuf, source: serde_json::Error },

    #[error("{}: {source}", .path.display())]
    Csv { path: PathBuf, source: csv::Error },

    #[error(transparent)]
    Compute(#[from] bec_probe_core::Error),
}

fn suggest(suggestion: &Option<String>) -> String {
    match suggestion {
        Some(s) => format!(" (did you mean `{s}`?)"),
        None => String::new(),
    }
}

impl Error {
    /// 2 for usage and configuration problems, 1 for failures of the
    /// computation or of writing its results.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Compute(bec_probe_core::Error::InvalidConfig(_))
            | Error::Compute(bec_probe_core::Error::MissingTransverseLength { .. })
            | Error::Compute(bec_probe_core::Error::InvalidQuadratureSpec(_))
            | Error::Compute(bec_probe_core::Error::InvalidSweep(_)) => 2,
            Error::Compute(_) | Error::Write { .. } | Error::Csv { .. } => 1,
            Error::Json { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
