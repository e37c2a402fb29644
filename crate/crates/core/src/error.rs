use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("sublattice is not saturated")]
    NotSaturated,
    #[error("cone is not strongly convex")]
    NotStronglyConvex,
    #[error("cone is not a face")]
    NotAFace,
    #[error("coloured cone is not in the fan")]
    ConeNotInFan,
    #[error("maps cannot be composed: {0}")]
    Mismatch(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fantastack conditions violated: {0}")]
    CfViolation(String),
    #[error("colour points and support do not span the lattice")]
    Cf1Violation,
    #[error("{0} is not a non-coloured ray of the fan")]
    NotANonColouredRay(String),
    #[error("parse error at {path}: {message}")]
    ParseError { path: String, message: String },
    #[error("{axiom}: {detail}")]
    ValidationError { axiom: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
