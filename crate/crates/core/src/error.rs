use thiserror::Error;

/// Errors raised by the linear algebra, the means and the verification registry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("singular matrix: smallest singular value {sigma_min:e} <= {threshold:e}")]
    SingularMatrix { sigma_min: f64, threshold: f64 },

    #[error("not Hermitian: skew part norm {skew_norm:e} exceeds {threshold:e}")]
    NotHermitian { skew_norm: f64, threshold: f64 },

    /// `index` names the offending tuple entry when the input was a tuple.
    #[error("not accretive: λ_min(ℜA) = {margin}{}", index.map(|i| format!(" (argument {i})")).unwrap_or_default())]
    NotAccretive { margin: f64, index: Option<usize> },

    #[error("eigenvalue {re} + {im}i lies on the branch cut (-inf, 0]")]
    SpectrumOnCut { re: f64, im: f64 },

    #[error("{0} did not converge within its iteration budget")]
    NoConvergence(&'static str),

    #[error("invalid mu: {0}")]
    InvalidMu(String),

    #[error("invalid lambda {0}: must lie in [0, 1]")]
    InvalidLambda(f64),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid spectral bounds: need 0 < h < k, got h = {h}, k = {k}")]
    InvalidBounds { h: f64, k: f64 },

    #[error("invalid angle {0}: must lie in [0, pi/2)")]
    InvalidAngle(f64),

    #[error("invalid positive unital map: {0}")]
    InvalidMap(String),

    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("invalid campaign configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
