use std::fmt;

use gnk::GnkError;

/// A failure with the process exit status it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub error: anyhow::Error,
}

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_SINGULAR: u8 = 3;
pub const EXIT_REJECTED_POINTS: u8 = 4;
pub const EXIT_DIAGNOSTIC: u8 = 5;

impl CliError {
    pub fn new(code: u8, error: impl Into<anyhow::Error>) -> Self {
        Self {
            code,
            error: error.into(),
        }
    }

    pub fn input(error: impl Into<anyhow::Error>) -> Self {
        Self::new(EXIT_INPUT, error)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

impl From<GnkError> for CliError {
    fn from(e: GnkError) -> Self {
        let code = match e {
            GnkError::EmptyDomain
            | GnkError::NonPositiveRadius { .. }
            | GnkError::Overlap { .. } => EXIT_DOMAIN,
            GnkError::NearSingular { .. } => EXIT_SINGULAR,
            GnkError::PointInsideDisk { .. } => EXIT_REJECTED_POINTS,
            GnkError::AmbiguousRank { .. } => EXIT_DIAGNOSTIC,
            _ => EXIT_INPUT,
        };
        Self::new(code, e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::input(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
