use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} does not divide the conductor 120")]
    Conductor(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {0} is not coprime to 120, so it does not define an automorphism")]
    NotAutomorphism(i64),
    #[error("presentation check failed: {0}")]
    Relation(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("character table derivation failed: {0}")]
    TableDerivation(String),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("internal contract violated: {0}")]
    Contract(String),
    #[error("divergent spectral sum: {0}")]
    Divergent(String),
    #[error("unsupported twist: {0}")]
    UnsupportedTwist(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
