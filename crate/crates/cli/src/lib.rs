//! Command-line front end for `nomvote-core`: JSON rule configs, analysis
//! reports and family sweeps.

pub mod commands;
pub mod config;
pub mod report;
pub mod sweep;

use nomvote_core::NomError;

pub use config::{ConfigError, FamilyTag, RuleConfig};

pub mod exit {
    pub const NOM: u8 = 0;
    pub const NOT_NOM: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const BUDGET: u8 = 3;
    pub const DISCREPANCY: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] NomError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_budget() => exit::BUDGET,
            _ => exit::USAGE,
        }
    }
}
