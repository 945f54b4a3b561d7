//! Command-line front end for the `cverify` engine.

pub mod explain;
pub mod query;
pub mod report;
pub mod run;
pub mod selftest;

pub use query::{OpName, Query};
pub use report::Report;
pub use run::run_query;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("engine error: {0}")]
    Engine(cverify::Error),
}

impl From<cverify::Error> for CliError {
    fn from(e: cverify::Error) -> Self {
        match e {
            cverify::Error::InvalidRational(s) => CliError::Parse(s),
            e @ cverify::Error::IncoherentRace { .. } => CliError::Engine(e),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}
