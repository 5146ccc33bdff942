use thiserror::Error;
use toroidal_exact::ExactError;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("weight {got} exceeds the cap {cap}")]
    WeightCap { got: u32, cap: u32 },
    #[error("not in wheel form: {0}")]
    NotWheelForm(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
