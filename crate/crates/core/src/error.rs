use thiserror::Error;

/// Errors surfaced by the library's validated constructors and operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian within tolerance")]
    NonHermitianInput,
    #[error("spectrum is not a probability distribution (negative weight or sum != 1)")]
    NotAProbabilitySpectrum,
    #[error("operator trace is not 1 within tolerance")]
    NotUnitTrace,
    #[error("parameter `{name}` = {value} is out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("invalid Pauli channel parameters: probabilities must be >= 0 with px+py+pz <= 1")]
    InvalidChannelParams,
    #[error("invalid prior: probabilities must be >= 0 and sum to 1")]
    InvalidPrior,
    #[error("pure-state overlap matrix requested for mixed letters; use the mixed overlap")]
    MixedLettersUseMixedOverlap,
    #[error("generator products do not close onto the generator set")]
    NotClosed,
    #[error("letter index {0} is out of range 1..=4")]
    IndexOutOfRange(usize),
    #[error("value `{0}` is not normalized within tolerance")]
    NotNormalized(&'static str),
    #[error("non-finite component in `{0}`")]
    NonFiniteInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
