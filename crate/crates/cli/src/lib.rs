//! Command-line front end for `lindblad2-core`: JSON model files, text
//! reports and CSV trajectories.

pub mod commands;
pub mod format;
pub mod model;

pub use commands::{EvolveArgs, Outcome, Settings, Target};
pub use model::{load_model, parse_model, Model};

/// Name of the environment variable that overrides `ε_psd`.
pub const TOL_ENV: &str = "LINDBLAD2_TOL";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("invalid model: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid model: {0}")]
    Model(String),
    #[error(transparent)]
    Core(#[from] lindblad2_core::Error),
    #[error("not completely positive: {0}")]
    NotCp(String),
    #[error("{0}")]
    Usage(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 1 for complete-positivity failures, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::NotCp(_) | Self::Core(lindblad2_core::Error::NotCp(_)) => 1,
            _ => 2,
        }
    }
}

/// Reads `ε_psd` from [`TOL_ENV`] when set.
pub fn settings_from_env() -> Result<Settings, CliError> {
    match std::env::var(TOL_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(Settings::default()),
        Err(e) => Err(CliError::Usage(format!("{TOL_ENV}: {e}"))),
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(eps) if eps >= 0.0 && eps.is_finite() => Ok(Settings { eps_psd: eps }),
            _ => Err(CliError::Usage(format!("{TOL_ENV} must be a non-negative number, got {v:?}"))),
        },
    }
}
