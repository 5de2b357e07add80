//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by curve construction, pricing and fitting.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A price lies outside the range reachable by the solver's bracket.
    #[error("target price {target} outside attainable range [{low}, {high}]")]
    UnattainablePrice { target: f64, low: f64, high: f64 },

    /// A tenor does not contain a whole number of coupon periods.
    #[error("tenor {tenor} is not a whole number of periods at {periods_per_year} per year")]
    NonIntegerPeriods { tenor: f64, periods_per_year: u32 },

    /// The regression cannot produce a valid survival curve from this data.
    #[error("infeasible fit: {0}")]
    InfeasibleFit(String),

    /// A numerical guard tripped (division by a vanishing quantity, etc).
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for this error: 2 when no valid curve exists for
    /// the data, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InfeasibleFit(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
