use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("face budget of {limit} exceeded")]
    BudgetExceeded { limit: usize },
    #[error("element lies outside the enumerated ball of radius {radius}")]
    OutsideBall { radius: usize },
    #[error("more than {cap} results")]
    CapExceeded { cap: usize },
    #[error("horizon exhausted: {0}")]
    Horizon(String),
    #[error("property violated: {0}")]
    Violation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
