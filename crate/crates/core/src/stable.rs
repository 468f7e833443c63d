//! Lévy stable densities p_α(y; θ) in the Feller parameterization.
//!
//! Only the representations with a finite formula are covered: the Gauss,
//! Cauchy-Lorentz and Lévy-Smirnov closed forms, the convergent power series
//! for α ≠ 1, and the extremal densities expressed through M-Wright functions.

use std::f64::consts::PI;

use crate::error::{domain, invalid, Error, Result};
use crate::green::{green_cauchy, green_signalling, GreenSpec, ProblemKind};
use crate::numeric::sum::CompensatedSum;
use crate::special_fn::{gamma, ln_gamma, m_wright, sinpi, EvalMethod, EvalPolicy, Evaluation};

const DIAMOND_SLACK: f64 = 1e-12;

/// Index of stability α in (0, 2] and skewness θ inside the Feller-Takayasu
/// diamond |θ| ≤ min(α, 2 - α). α = 1 is restricted to the symmetric case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    alpha: f64,
    theta: f64,
}

impl StableParams {
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(invalid(format!("alpha must lie in (0, 2], got {alpha}")));
        }
        if !theta.is_finite() {
            return Err(invalid(format!("theta must be finite, got {theta}")));
        }
        if alpha == 1.0 && theta != 0.0 {
            return Err(invalid("alpha = 1 with theta != 0 is a point mass, not a density"));
        }
        let bound = alpha.min(2.0 - alpha);
        if theta.abs() > bound + DIAMOND_SLACK {
            return Err(invalid(format!("(alpha, theta) = ({alpha}, {theta}) lies outside |theta| <= {bound}")));
        }
        Ok(Self { alpha, theta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The mirror law: p_α(-y; -θ) = p_α(y; θ).
    pub fn reflected(&self) -> Self {
        Self { theta: -self.theta, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// scale = σ
    Gauss,
    /// scale = λ
    CauchyLorentz,
    /// scale = μ; supported on y > 0
    LevySmirnov,
}

fn check_scale(scale: f64) -> Result<()> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(invalid(format!("scale must be positive, got {scale}")));
    }
    Ok(())
}

fn check_y(kind: ClosedForm, y: f64) -> Result<()> {
    if y.is_nan() {
        return Err(domain("y is NaN"));
    }
    if kind == ClosedForm::LevySmirnov && !(y > 0.0) {
        return Err(domain(format!("the Lévy-Smirnov law lives on y > 0, got {y}")));
    }
    Ok(())
}

pub fn stable_pdf_closed(kind: ClosedForm, scale: f64, y: f64) -> Result<f64> {
    check_scale(scale)?;
    check_y(kind, y)?;
    Ok(match kind {
        ClosedForm::Gauss => (-0.5 * (y / scale).powi(2)).exp() / ((2.0 * PI).sqrt() * scale),
        ClosedForm::CauchyLorentz => scale / (PI * (y * y + scale * scale)),
        ClosedForm::LevySmirnov => {
            if y.is_infinite() {
                return Ok(0.0);
            }
            (scale / (2.0 * PI)).sqrt() * y.powf(-1.5) * (-scale / (2.0 * y)).exp()
        }
    })
}

pub fn stable_cdf_closed(kind: ClosedForm, scale: f64, y: f64) -> Result<f64> {
    check_scale(scale)?;
    check_y(kind, y)?;
    Ok(match kind {
        ClosedForm::Gauss => 0.5 * libm::erfc(-y / (2.0f64.sqrt() * scale)),
        ClosedForm::CauchyLorentz => {
            // arctan(y/λ)/π + 1/2, written to keep precision in the left tail
            if y < 0.0 {
                (scale / -y).atan() / PI
            } else {
                0.5 + (y / scale).atan() / PI
            }
        }
        ClosedForm::LevySmirnov => libm::erfc((scale / (2.0 * y)).sqrt()),
    })
}

/// Series for p_α(y; θ), y > 0.
///
///   0 < α < 1: (1/πy) Σ (-y^{-α})^n Γ(nα+1)/n! sin(nπ(θ-α)/2)
///   1 < α < 2: (1/πy) Σ (-y)^n Γ(n/α+1)/n! sin(nπ(θ-α)/(2α))
pub fn stable_pdf_series_eval(p: &StableParams, y: f64, policy: &EvalPolicy) -> Result<Evaluation> {
    let (alpha, theta) = (p.alpha, p.theta);
    if alpha == 1.0 {
        return Err(Error::AlphaOne);
    }
    if alpha == 2.0 {
        return Err(invalid("alpha = 2 is the Gauss law; use stable_pdf_closed"));
    }
    if !(y > 0.0) || !y.is_finite() {
        return Err(domain(format!("the series needs finite y > 0, got {y}")));
    }
    let (ln_x, kappa, phase) = if alpha < 1.0 {
        (-alpha * y.ln(), alpha, 0.5 * (theta - alpha))
    } else {
        (y.ln(), 1.0 / alpha, 0.5 * (theta - alpha) / alpha)
    };
    let envelope = |n: usize| {
        let nf = n as f64;
        nf * ln_x + ln_gamma(nf * kappa + 1.0) - ln_gamma(nf + 1.0)
    };

    let mut acc = CompensatedSum::new();
    let mut term_error = 0.0;
    let mut prev_step = f64::INFINITY;
    let mut env_next = envelope(1);
    for n in 1..=policy.max_terms() {
        let env_n = env_next;
        let s = sinpi(n as f64 * phase);
        if s != 0.0 {
            let mag = env_n.exp();
            let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
            acc.add(sign * s * mag);
            term_error += mag * f64::EPSILON * (4.0 + env_n.abs() + 2.0 * n as f64 * ln_x.abs());
        }
        env_next = envelope(n + 1);
        let step = env_next - env_n;
        if step < 0.0 && step <= prev_step {
            let tail = env_next.exp() / (1.0 - step.exp());
            let target = policy.series_tol().min(f64::EPSILON * acc.value().abs());
            if tail <= target || env_next < -745.0 {
                let scale = 1.0 / (PI * y);
                let value = scale * acc.value();
                let error_estimate = scale * (tail + term_error + acc.rounding_estimate());
                if error_estimate > value.abs() && error_estimate > f64::MIN_POSITIVE {
                    return Err(Error::Cancellation { peak_term: scale * acc.peak(), sum: value });
                }
                let value = if value < 0.0 && -value <= error_estimate { 0.0 } else { value };
                return Ok(Evaluation { value, method: EvalMethod::Series, terms: n, error_estimate });
            }
        }
        prev_step = step;
    }
    Err(Error::NonConvergent { terms: policy.max_terms(), tail_bound: env_next.exp() / (PI * y) })
}

pub fn stable_pdf_series(p: &StableParams, y: f64, policy: &EvalPolicy) -> Result<f64> {
    stable_pdf_series_eval(p, y, policy).map(|e| e.value)
}

/// Extremal densities through M-Wright functions, y > 0:
///
///   0 < α < 1: p_α(y; -α)  = α y^{-α-1} M_α(y^{-α})
///   1 < α < 2: p_α(y; α-2) = M_{1/α}(y) / α
pub fn stable_from_mwright(alpha: f64, y: f64) -> Result<f64> {
    stable_from_mwright_with(alpha, y, &EvalPolicy::default())
}

pub fn stable_from_mwright_with(alpha: f64, y: f64, policy: &EvalPolicy) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) || alpha == 1.0 {
        return Err(invalid(format!("alpha must lie in (0, 1) or (1, 2), got {alpha}")));
    }
    if !(y > 0.0) || y.is_nan() {
        return Err(domain(format!("y must be positive, got {y}")));
    }
    if y.is_infinite() {
        return Ok(0.0);
    }
    if alpha < 1.0 {
        let u = y.powf(-alpha);
        if u.is_infinite() {
            return Ok(0.0);
        }
        let m = m_wright(alpha, u, policy)?;
        Ok(if m == 0.0 { 0.0 } else { alpha * u / y * m })
    } else {
        Ok(m_wright(1.0 / alpha, y, policy)? / alpha)
    }
}

fn extremal_route(p: &StableParams) -> bool {
    let (alpha, theta) = (p.alpha, p.theta);
    (alpha < 1.0 && (theta + alpha).abs() <= DIAMOND_SLACK)
        || (alpha > 1.0 && alpha < 2.0 && (theta - (alpha - 2.0)).abs() <= DIAMOND_SLACK)
}

/// p_α(y; θ) for any y, using whichever representation applies.
pub fn stable_pdf(p: &StableParams, y: f64, policy: &EvalPolicy) -> Result<f64> {
    if y.is_nan() {
        return Err(domain("y is NaN"));
    }
    let (alpha, theta) = (p.alpha, p.theta);
    if alpha == 2.0 {
        return stable_pdf_closed(ClosedForm::Gauss, 2.0f64.sqrt(), y);
    }
    if alpha == 1.0 {
        return stable_pdf_closed(ClosedForm::CauchyLorentz, 1.0, y);
    }
    if y < 0.0 {
        return stable_pdf(&p.reflected(), -y, policy);
    }
    if y == 0.0 {
        return Ok(gamma(1.0 + 1.0 / alpha) * (0.5 * theta / alpha * PI).cos() / PI);
    }
    if y.is_infinite() {
        return Ok(0.0);
    }
    // θ = +α with α < 1 lives on the negative half-line
    if alpha < 1.0 && (theta - alpha).abs() <= DIAMOND_SLACK {
        return Ok(0.0);
    }
    if extremal_route(p) {
        return stable_from_mwright_with(alpha, y, policy);
    }
    stable_pdf_series(p, y, policy)
}

/// |y^{-(α+1)} p_{1/α}(y^{-α}; θ) - p_α(y; θ*)| with θ* = α(θ+1) - 1.
pub fn stable_duality_residual(alpha: f64, theta: f64, y: f64) -> Result<f64> {
    if !(alpha > 0.5 && alpha < 1.0) {
        return Err(invalid(format!("duality needs 1/2 < alpha < 1, got {alpha}")));
    }
    let bound = 2.0 - 1.0 / alpha;
    if !(theta.abs() <= bound + DIAMOND_SLACK) {
        return Err(invalid(format!("duality needs |theta| <= 2 - 1/alpha = {bound}, got {theta}")));
    }
    if !(y > 0.0) || !y.is_finite() {
        return Err(domain(format!("y must be finite and positive, got {y}")));
    }
    let policy = EvalPolicy::default();
    let wide = StableParams::new(1.0 / alpha, theta)?;
    let narrow = StableParams::new(alpha, alpha * (theta + 1.0) - 1.0)?;
    let lhs = y.powf(-(alpha + 1.0)) * stable_pdf_series(&wide, y.powf(-alpha), &policy)?;
    let rhs = stable_pdf_series(&narrow, y, &policy)?;
    Ok((lhs - rhs).abs())
}

/// Residual of the identities linking the Green functions to extremal stable
/// laws:
///
///   Signalling: (x/√a)^{1/ν} G_s(x, t) = p_ν(τ; -ν),  τ = t (√a/x)^{1/ν}
///   Cauchy:     2ν √a t^ν G_c(x, t) = p_{1/ν}(ξ; 1/ν - 2),  ξ = x/(√a t^ν), 1/2 ≤ ν < 1
///
/// The stable side is taken from its power series where that keeps ten
/// digits, otherwise from the M-Wright route.
pub fn signalling_as_stable_residual(kind: ProblemKind, nu: f64, x: f64, t: f64, a: f64) -> Result<f64> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(invalid(format!("nu must lie in (0, 1), got {nu}")));
    }
    if !(x > 0.0) || !(t > 0.0) || !x.is_finite() || !t.is_finite() {
        return Err(domain(format!("x and t must be positive, got x = {x}, t = {t}")));
    }
    let sa = a.sqrt();
    let policy = EvalPolicy::default();
    match kind {
        ProblemKind::Signalling => {
            let spec = GreenSpec::signalling(a, nu)?;
            let lhs = (x / sa).powf(1.0 / nu) * green_signalling(&spec, x, t)?;
            let tau = t * (sa / x).powf(1.0 / nu);
            let p = StableParams::new(nu, -nu)?;
            let rhs = series_or_mwright(&p, tau, &policy)?;
            Ok((lhs - rhs).abs())
        }
        ProblemKind::Cauchy => {
            if nu < 0.5 {
                return Err(invalid(format!("the Cauchy identity needs 1/2 <= nu < 1, got {nu}")));
            }
            let spec = GreenSpec::cauchy(a, nu)?;
            let lhs = 2.0 * nu * sa * t.powf(nu) * green_cauchy(&spec, x, t)?;
            let xi = x / (sa * t.powf(nu));
            let rhs = if nu == 0.5 {
                stable_pdf_closed(ClosedForm::Gauss, 2.0f64.sqrt(), xi)?
            } else {
                let alpha = 1.0 / nu;
                series_or_mwright(&StableParams::new(alpha, alpha - 2.0)?, xi, &policy)?
            };
            Ok((lhs - rhs).abs())
        }
    }
}

fn series_or_mwright(p: &StableParams, y: f64, policy: &EvalPolicy) -> Result<f64> {
    match stable_pdf_series_eval(p, y, policy) {
        Ok(e) if e.error_estimate <= 1e-10 * e.value.abs() => Ok(e.value),
        Ok(_) | Err(Error::Cancellation { .. } | Error::NonConvergent { .. }) => {
            stable_from_mwright_with(p.alpha, y, policy)
        }
        Err(e) => Err(e),
    }
}
