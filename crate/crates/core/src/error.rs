use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {0} is not in the carrier")]
    ElementNotInCarrier(String),
    #[error("operation needs an enumerable carrier: {0}")]
    NotEnumerable(String),
    #[error("map does not match the carrier: {0}")]
    DomainMismatch(String),
    #[error("element {0} has no projection cover")]
    NoCover(String),
    #[error("element {0} does not have the b-property")]
    BPropertyMissing(String),
    #[error("no comparing projection for the pair ({0}, {1})")]
    ComparabilityMissing(String, String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("rational resolution did not stabilize at depth {0}")]
    Unstable(u32),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("grid too narrow: {0}")]
    GridTooNarrow(String),
    #[error("instance exceeds size limit: {0}")]
    SizeLimit(String),
    #[error("state is not faithful: {0}")]
    NotFaithful(String),
    #[error("scaled projection leaves the carrier: {0}")]
    ScaleMismatch(String),
    #[error("instance is not spectral: {0}")]
    NotSpectral(String),
    #[error("element not found: {0}")]
    ElementNotFound(String),
    #[error("algebra is not archimedean")]
    NotArchimedean,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
