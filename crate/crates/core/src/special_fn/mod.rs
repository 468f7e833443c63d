//! Wright function W_{λ,μ} and the auxiliary functions F_ν, M_ν.
//!
//! M_ν(r) = W_{-ν,1-ν}(-r) and F_ν(r) = W_{-ν,0}(-r) = ν r M_ν(r). The
//! power series is used near the origin; past the crossover radius the
//! alternating terms cancel badly and `Auto` switches to a trapezoid rule on a
//! steepest-descent contour of the Hankel integral.

mod asymptotic;
mod contour;
pub mod gamma;
mod series;

pub use asymptotic::{
    m_wright_asymptotic, m_wright_saddle_expansion, m_wright_tail_radius, series_asymptotic_overlap,
    OverlapReport,
};
pub use contour::m_wright_contour;
pub use gamma::{gamma, ln_gamma, rgamma, sinpi};
pub use series::wright_series_eval;

use crate::error::{domain, invalid, Error, Result};

/// The coupled orders of the diffusion-wave equation: β = 2ν = 2 − γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    beta: f64,
    nu: f64,
    gamma: f64,
}

impl FractionalOrder {
    /// From ν in (0, 1].
    pub fn from_nu(nu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu <= 1.0) {
            return Err(invalid(format!("nu must lie in (0, 1], got {nu}")));
        }
        let beta = 2.0 * nu;
        Ok(Self { beta, nu, gamma: 2.0 - beta })
    }

    /// From β in (0, 2].
    pub fn from_beta(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 2.0) {
            return Err(invalid(format!("beta must lie in (0, 2], got {beta}")));
        }
        Ok(Self { beta, nu: 0.5 * beta, gamma: 2.0 - beta })
    }

    /// From γ in [0, 2). γ is kept as given; β and ν are derived from it.
    pub fn from_gamma(gamma: f64) -> Result<Self> {
        if !(0.0..2.0).contains(&gamma) {
            return Err(invalid(format!("gamma must lie in [0, 2), got {gamma}")));
        }
        let beta = 2.0 - gamma;
        Ok(Self { beta, nu: 0.5 * beta, gamma })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Parameters (λ, μ) of W_{λ,μ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightParams {
    lambda: f64,
    mu: f64,
}

impl WrightParams {
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        if !(lambda > -1.0) || !lambda.is_finite() {
            return Err(invalid(format!("lambda must exceed -1, got {lambda}")));
        }
        if !(mu >= 0.0) || !mu.is_finite() {
            return Err(invalid(format!("mu must be non-negative, got {mu}")));
        }
        Ok(Self { lambda, mu })
    }

    /// (λ, μ) = (-ν, 1 - ν).
    pub fn m_wright(nu: f64) -> Result<Self> {
        Self::new(-nu, 1.0 - nu)
    }

    /// (λ, μ) = (-ν, 0).
    pub fn f_wright(nu: f64) -> Result<Self> {
        Self::new(-nu, 0.0)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// Which evaluation path `m_wright` may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Auto,
    SeriesOnly,
    AsymptoticOnly,
    Contour,
}

/// The path that actually produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    Series,
    Asymptotic,
    Contour,
    ClosedForm,
}

impl EvalMethod {
    pub fn name(&self) -> &'static str {
        match self {
            EvalMethod::Series => "series",
            EvalMethod::Asymptotic => "asymptotic",
            EvalMethod::Contour => "contour",
            EvalMethod::ClosedForm => "closed-form",
        }
    }
}

/// Truncation and method-selection controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPolicy {
    series_tol: f64,
    max_terms: usize,
    crossover_radius: Option<f64>,
    method: Method,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        Self { series_tol: 1e-16, max_terms: 1000, crossover_radius: None, method: Method::Auto }
    }
}

impl EvalPolicy {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn series_only() -> Self {
        Self { method: Method::SeriesOnly, ..Self::default() }
    }

    pub fn with_series_tol(self, series_tol: f64) -> Result<Self> {
        if !(series_tol > 0.0) {
            return Err(invalid(format!("series_tol must be positive, got {series_tol}")));
        }
        Ok(Self { series_tol, ..self })
    }

    pub fn with_max_terms(self, max_terms: usize) -> Result<Self> {
        if max_terms == 0 {
            return Err(invalid("max_terms must be at least 1"));
        }
        Ok(Self { max_terms, ..self })
    }

    pub fn with_crossover_radius(self, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(invalid(format!("crossover_radius must be positive, got {radius}")));
        }
        Ok(Self { crossover_radius: Some(radius), ..self })
    }

    pub fn with_method(self, method: Method) -> Self {
        Self { method, ..self }
    }

    pub fn series_tol(&self) -> f64 {
        self.series_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Crossover radius in effect for order `nu`.
    pub fn crossover_for(&self, nu: f64) -> f64 {
        self.crossover_radius.unwrap_or_else(|| default_crossover(nu))
    }
}

/// 4 up to ν = 1/2, then linearly down to 2 at ν = 3/4, continuing on the
/// same line and clamped at 1.
pub fn default_crossover(nu: f64) -> f64 {
    if nu <= 0.5 {
        4.0
    } else {
        (4.0 - 8.0 * (nu - 0.5)).max(1.0)
    }
}

/// A value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub method: EvalMethod,
    /// Series terms or quadrature nodes used.
    pub terms: usize,
    /// Absolute error estimate.
    pub error_estimate: f64,
}

/// W_{λ,μ}(z) by its power series.
pub fn wright_series(p: WrightParams, z: f64, policy: &EvalPolicy) -> Result<f64> {
    wright_series_eval(p, z, policy).map(|e| e.value)
}

fn check_nu_r(nu: f64, r: f64) -> Result<()> {
    if nu == 1.0 {
        return Err(Error::DistributionalLimit(
            "M_1(r) is the point mass delta(r - 1)".into(),
        ));
    }
    if !(0.0..1.0).contains(&nu) {
        return Err(invalid(format!("nu must lie in [0, 1), got {nu}")));
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(domain(format!("r must be finite and non-negative, got {r}")));
    }
    Ok(())
}

/// M_ν(r) with the evaluation path and an error estimate.
///
/// ν = 0 is accepted and returns the limit e^{-r}.
pub fn m_wright_eval(nu: f64, r: f64, policy: &EvalPolicy) -> Result<Evaluation> {
    check_nu_r(nu, r)?;
    if nu == 0.0 {
        return Ok(Evaluation { value: (-r).exp(), method: EvalMethod::ClosedForm, terms: 0, error_estimate: 0.0 });
    }
    if r == 0.0 && policy.method != Method::AsymptoticOnly {
        return Ok(Evaluation {
            value: rgamma(1.0 - nu),
            method: EvalMethod::Series,
            terms: 1,
            error_estimate: 0.0,
        });
    }
    let series = || -> Result<Evaluation> {
        let e = wright_series_eval(WrightParams::m_wright(nu)?, -r, policy)?;
        nonnegative(e)
    };
    match policy.method {
        Method::SeriesOnly => series(),
        Method::AsymptoticOnly => Ok(Evaluation {
            value: m_wright_asymptotic(nu, r)?,
            method: EvalMethod::Asymptotic,
            terms: 1,
            error_estimate: f64::NAN,
        }),
        Method::Contour => m_wright_contour(nu, r),
        Method::Auto => {
            if r <= policy.crossover_for(nu) {
                series()
            } else {
                m_wright_contour(nu, r)
            }
        }
    }
}

/// Rejects sums with no significant digit left, then clamps a negative value
/// that is within its error estimate of zero.
fn nonnegative(e: Evaluation) -> Result<Evaluation> {
    if e.error_estimate > e.value.abs() && e.error_estimate > f64::MIN_POSITIVE {
        return Err(Error::Cancellation { peak_term: e.error_estimate, sum: e.value });
    }
    if e.value >= 0.0 {
        return Ok(e);
    }
    if -e.value <= e.error_estimate {
        return Ok(Evaluation { value: 0.0, ..e });
    }
    Err(Error::Cancellation { peak_term: e.error_estimate, sum: e.value })
}

/// M_ν(r) for 0 ≤ ν < 1, r ≥ 0.
pub fn m_wright(nu: f64, r: f64, policy: &EvalPolicy) -> Result<f64> {
    m_wright_eval(nu, r, policy).map(|e| e.value)
}

/// F_ν(r) = ν r M_ν(r).
pub fn f_wright_eval(nu: f64, r: f64, policy: &EvalPolicy) -> Result<Evaluation> {
    let m = m_wright_eval(nu, r, policy)?;
    let k = nu * r;
    Ok(Evaluation { value: k * m.value, error_estimate: k * m.error_estimate, ..m })
}

pub fn f_wright(nu: f64, r: f64, policy: &EvalPolicy) -> Result<f64> {
    f_wright_eval(nu, r, policy).map(|e| e.value)
}

/// F_ν(r) from its own series W_{-ν,0}(-r), independent of the M route.
pub fn f_wright_series(nu: f64, r: f64, policy: &EvalPolicy) -> Result<Evaluation> {
    check_nu_r(nu, r)?;
    if nu == 0.0 {
        return Ok(Evaluation { value: 0.0, method: EvalMethod::ClosedForm, terms: 0, error_estimate: 0.0 });
    }
    nonnegative(wright_series_eval(WrightParams::f_wright(nu)?, -r, policy)?)
}

/// ∫_0^∞ r^n M_ν(r) dr = Γ(n+1)/Γ(νn+1).
pub fn m_wright_moment(nu: f64, n: u32) -> f64 {
    let n = n as f64;
    if n <= 170.0 {
        gamma(n + 1.0) * rgamma(nu * n + 1.0)
    } else {
        (ln_gamma(n + 1.0) - ln_gamma(nu * n + 1.0)).exp()
    }
}
