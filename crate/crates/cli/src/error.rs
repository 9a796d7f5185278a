use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gridsight_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config: {0}")]
    Config(#[from] toml::de::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    /// A checked property did not hold; carries its tag.
    #[error("check failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// 1 when a checked property fails, 2 for anything the caller got wrong.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_invariant() => 1,
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}
