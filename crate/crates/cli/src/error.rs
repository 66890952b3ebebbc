use gibbs_chains::ChainError;
use gibbs_models::ModelError;
use gibbs_oracle::OracleError;
use gibbs_spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Unsupported(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::MomentNonexistence { .. } | ModelError::Unsupported(_) => CliError::Unsupported(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::Model(m) => m.into(),
            ChainError::Unsupported(s) => CliError::Unsupported(s),
            ChainError::BadState(_) => CliError::Config(e.to_string()),
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Chain(c) => c.into(),
            SpectralError::Model(m) => m.into(),
            SpectralError::InvalidInput(_) | SpectralError::SettingMismatch(_) => CliError::Config(e.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Chain(c) => c.into(),
            OracleError::Spectral(s) => s.into(),
            OracleError::InvalidInput(s) => CliError::Config(s),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Config(e.to_string())
    }
}
