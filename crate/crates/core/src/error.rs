use thiserror::Error;

/// Domain errors raised by state construction, evolution and calibration.
///
/// Every variant has a stable machine-readable name (see [`Error::name`]);
/// the CLI prints it verbatim so scripts can match on it.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("deformation function is singular at n = {n}")]
    SingularDeformation { n: usize },

    #[error("series did not converge within {terms} terms")]
    NonConvergent { terms: usize },

    #[error("normalization series is not positive ({value})")]
    NonNormalizable { value: f64 },

    #[error("deformed factorial [{n}]_f! is not positive where the state has weight")]
    NegativeDeformedFactorial { n: usize },

    #[error("truncation too small: need dim >= {required}, have {available}")]
    TruncationTooSmall { required: usize, available: usize },

    #[error("superposition components cancel (norm^2 = {norm_sqr:e})")]
    DegenerateSuperposition { norm_sqr: f64 },

    #[error("visibility denominator vanishes at n = {n}")]
    DegenerateDenominator { n: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("no crossing of the target separation below xi = {xi_max}")]
    NoCrossing { xi_max: f64 },

    #[error("every bracket of the target separation touches a singular point")]
    SingularBracket,
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::SingularDeformation { .. } => "SingularDeformation",
            Error::NonConvergent { .. } => "NonConvergent",
            Error::NonNormalizable { .. } => "NonNormalizable",
            Error::NegativeDeformedFactorial { .. } => "NegativeDeformedFactorial",
            Error::TruncationTooSmall { .. } => "TruncationTooSmall",
            Error::DegenerateSuperposition { .. } => "DegenerateSuperposition",
            Error::DegenerateDenominator { .. } => "DegenerateDenominator",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NoCrossing { .. } => "NoCrossing",
            Error::SingularBracket => "SingularBracket",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}
