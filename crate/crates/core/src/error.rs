use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("point ({row},{col}) lies outside the {m}x{n} grid")]
    OutOfBounds { row: u32, col: u32, m: u32, n: u32 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("{what} {size} exceeds the bound {bound}")]
    Capacity { what: &'static str, size: usize, bound: usize },
    #[error("denominator factor {factor} vanishes at the given assignment")]
    Pole { factor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus is not squarefree in t")]
    NotSquarefree,
    #[error("{0} is not invertible modulo the given modulus")]
    NotInvertible(String),
    #[error("could not draw a pole-free assignment in {attempts} attempts")]
    Sampling { attempts: usize },
    #[error("LGV determinant does not equal the identity-matching sum: {0}")]
    LgvNotApplicable(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
