use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("probability {value} outside [0, 1] for {what}")]
    Domain { what: String, value: f64 },

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("invalid distribution: {0}")]
    Distribution(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("empty variable set")]
    EmptyVariableSet,

    #[error("variable sets overlap on `{0}`")]
    OverlappingSets(String),

    #[error("malformed Markov chain: {0}")]
    MalformedChain(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Markov precondition violated: {chain} has violation {violation:.3e} bits")]
    MarkovViolation { chain: String, violation: f64 },

    #[error("empty grid: {0}")]
    EmptyGrid(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("enumeration cost {cost} exceeds budget {budget}")]
    BudgetExceeded { cost: u128, budget: u128 },

    #[error("codebook sanity check failed: {0}")]
    CodebookSanity(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_probability(what: &str, value: f64, tol: f64) -> Result<f64> {
    if !value.is_finite() || value < -tol || value > 1.0 + tol {
        return Err(Error::Domain {
            what: what.to_string(),
            value,
        });
    }
    Ok(value.clamp(0.0, 1.0))
}
