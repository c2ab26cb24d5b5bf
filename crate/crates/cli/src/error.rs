use thiserror::Error;

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Core(#[from] caloron_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for bad input, 2 when the operator is not Fredholm. Missed
    /// tolerances are not errors; they surface as exit code 3 from the
    /// command outcome.
    pub fn exit_code(&self) -> u8 {
        use caloron_core::Error as E;
        match self {
            CliError::Core(E::NotFredholm { .. } | E::OnLattice { .. }) => 2,
            _ => 1,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
