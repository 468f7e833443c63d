use thiserror::Error;

/// Errors raised by the evaluators in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("series did not converge after {terms} terms (last tail bound {tail_bound:e})")]
    NonConvergent { terms: usize, tail_bound: f64 },

    #[error("series lost too many digits to cancellation (peak term {peak_term:e}, sum {sum:e})")]
    Cancellation { peak_term: f64, sum: f64 },

    /// The requested object is a distribution (delta function), not a point-evaluable density.
    #[error("distributional limit: {0}")]
    DistributionalLimit(String),

    #[error("degenerate saddle point for nu = {nu}: the leading-order asymptotic form is not reliable")]
    Degenerate { nu: f64 },

    #[error("argument outside the domain: {0}")]
    InvalidDomain(String),

    #[error("fit range too short: t_hi/t_lo = {ratio} < 100")]
    InsufficientRange { ratio: f64 },

    #[error("alpha = 1 has no series representation; use the Cauchy-Lorentz closed form")]
    AlphaOne,

    #[error("t = {t} is not a grid point (dt = {dt})")]
    OffGrid { t: f64, dt: f64 },

    #[error("insufficient resolution: {0}")]
    InsufficientResolution(String),

    #[error("contour quadrature unstable: estimates {coarse:e} and {fine:e} disagree")]
    Unstable { coarse: f64, fine: f64 },

    #[error("time stepping unstable at t = {t}: max |w| grew by a factor {growth:.3e}")]
    SchemeUnstable { t: f64, growth: f64 },

    #[error("numeric Laplace transform does not converge on the sampled horizon: {0}")]
    NonConvergentTransform(String),

    /// `limit`, when present, is the value approached at the excluded endpoint.
    #[error("{message}")]
    OutOfRange { message: String, limit: Option<f64> },

    #[error("unknown figure {0:?} (expected fig1, fig2, b1 or b2)")]
    UnknownFigure(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::InvalidDomain(msg.into())
}
