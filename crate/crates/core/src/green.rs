//! Fundamental solutions of the Cauchy and Signalling problems.
//!
//! With r = |x| / (√a t^ν):
//!   G_c(x, t) = M_ν(r) / (2 √a t^ν)
//!   G_s(x, t) = ν x / (√a t^{1+ν}) M_ν(r) = F_ν(r) / t

use num_complex::Complex64;

use crate::error::{domain, invalid, Error, Result};
use crate::laplace_oracle::TransformFn;
use crate::special_fn::{
    f_wright_series, gamma, ln_gamma, m_wright_eval, EvalPolicy, Evaluation, FractionalOrder, Method,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Cauchy,
    Signalling,
}

/// Problem kind, diffusivity `a` (L² T^{-β}) and order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenSpec {
    kind: ProblemKind,
    a: f64,
    order: FractionalOrder,
    policy: EvalPolicy,
}

impl GreenSpec {
    pub fn new(kind: ProblemKind, a: f64, order: FractionalOrder) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(invalid(format!("diffusivity a must be positive, got {a}")));
        }
        Ok(Self { kind, a, order, policy: EvalPolicy::default() })
    }

    pub fn cauchy(a: f64, nu: f64) -> Result<Self> {
        Self::new(ProblemKind::Cauchy, a, FractionalOrder::from_nu(nu)?)
    }

    pub fn signalling(a: f64, nu: f64) -> Result<Self> {
        Self::new(ProblemKind::Signalling, a, FractionalOrder::from_nu(nu)?)
    }

    pub fn with_policy(self, policy: EvalPolicy) -> Self {
        Self { policy, ..self }
    }

    /// The same medium with the other problem kind.
    pub fn with_kind(self, kind: ProblemKind) -> Self {
        Self { kind, ..self }
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn nu(&self) -> f64 {
        self.order.nu()
    }

    pub fn order(&self) -> FractionalOrder {
        self.order
    }

    pub fn policy(&self) -> &EvalPolicy {
        &self.policy
    }

    fn expect(&self, kind: ProblemKind) -> Result<()> {
        if self.kind != kind {
            return Err(invalid(format!("expected a {kind:?} spec, got {:?}", self.kind)));
        }
        Ok(())
    }

    fn reject_wave_limit(&self) -> Result<()> {
        if self.nu() == 1.0 {
            let c = self.a.sqrt();
            return Err(Error::DistributionalLimit(match self.kind {
                ProblemKind::Cauchy => format!("G_c = [delta(x - {c} t) + delta(x + {c} t)] / 2"),
                ProblemKind::Signalling => format!("G_s = delta(t - x / {c})"),
            }));
        }
        Ok(())
    }
}

/// A space-time point with its similarity variable r = |x| / (√a t^ν).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityPoint {
    x: f64,
    t: f64,
    r: f64,
}

impl SimilarityPoint {
    pub fn new(x: f64, t: f64, a: f64, nu: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(domain(format!("t must be positive, got {t}")));
        }
        if !x.is_finite() {
            return Err(domain(format!("x must be finite, got {x}")));
        }
        Ok(Self { x, t, r: similarity(x, t, a, nu) })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

fn similarity(x: f64, t: f64, a: f64, nu: f64) -> f64 {
    x.abs() / (a.sqrt() * t.powf(nu))
}

/// G_c(x, t) with the evaluation path of the underlying M_ν.
pub fn green_cauchy_eval(spec: &GreenSpec, x: f64, t: f64) -> Result<Evaluation> {
    spec.expect(ProblemKind::Cauchy)?;
    spec.reject_wave_limit()?;
    let p = SimilarityPoint::new(x, t, spec.a, spec.nu())?;
    let m = m_wright_eval(spec.nu(), p.r, &spec.policy)?;
    let k = 1.0 / (2.0 * spec.a.sqrt() * t.powf(spec.nu()));
    Ok(Evaluation { value: k * m.value, error_estimate: k * m.error_estimate, ..m })
}

pub fn green_cauchy(spec: &GreenSpec, x: f64, t: f64) -> Result<f64> {
    green_cauchy_eval(spec, x, t).map(|e| e.value)
}

/// G_s(x, t) for x > 0, t > 0.
pub fn green_signalling_eval(spec: &GreenSpec, x: f64, t: f64) -> Result<Evaluation> {
    spec.expect(ProblemKind::Signalling)?;
    spec.reject_wave_limit()?;
    if !(x > 0.0) {
        return Err(domain(format!("signalling solution needs x > 0, got {x}")));
    }
    let p = SimilarityPoint::new(x, t, spec.a, spec.nu())?;
    let m = m_wright_eval(spec.nu(), p.r, &spec.policy)?;
    let k = spec.nu() * p.r / t;
    Ok(Evaluation { value: k * m.value, error_estimate: k * m.error_estimate, ..m })
}

pub fn green_signalling(spec: &GreenSpec, x: f64, t: f64) -> Result<f64> {
    green_signalling_eval(spec, x, t).map(|e| e.value)
}

/// The ν → 0 Cauchy limit e^{-|x|/√a} / (2√a), independent of t.
pub fn green_cauchy_nu0(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(invalid(format!("diffusivity a must be positive, got {a}")));
    }
    let c = a.sqrt();
    Ok((-x.abs() / c).exp() / (2.0 * c))
}

/// The ν → 0 Signalling limit is δ(t).
pub fn green_signalling_nu0() -> Result<f64> {
    Err(Error::DistributionalLimit("G_s = delta(t) for nu = 0".into()))
}

/// Laplace image of G_c on the real s axis: exp(-|x| s^ν / √a) / (2 √a s^{1-ν}).
pub fn green_cauchy_transform(spec: &GreenSpec, x: f64, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(domain(format!("s must be positive, got {s}")));
    }
    let nu = spec.nu();
    let c = spec.a.sqrt();
    Ok((-x.abs() / c * s.powf(nu)).exp() / (2.0 * c * s.powf(1.0 - nu)))
}

/// Laplace image of G_s on the real s axis: exp(-x s^ν / √a).
pub fn green_signalling_transform(spec: &GreenSpec, x: f64, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(domain(format!("s must be positive, got {s}")));
    }
    if !(x >= 0.0) {
        return Err(domain(format!("signalling transform needs x >= 0, got {x}")));
    }
    Ok((-x / spec.a.sqrt() * s.powf(spec.nu())).exp())
}

/// The Cauchy image as a complex transform for the inversion oracle.
pub fn cauchy_transform_fn(spec: &GreenSpec, x: f64) -> TransformFn {
    let nu = spec.nu();
    let c = spec.a.sqrt();
    let k = x.abs() / c;
    TransformFn::new(
        move |s: Complex64| {
            let ln_s = s.ln();
            (-k * (nu * ln_s).exp() - (1.0 - nu) * ln_s).exp() / (2.0 * c)
        },
        "negative real axis (principal s^nu)",
    )
}

/// The Signalling image as a complex transform for the inversion oracle.
pub fn signalling_transform_fn(spec: &GreenSpec, x: f64) -> TransformFn {
    let nu = spec.nu();
    let k = x / spec.a.sqrt();
    TransformFn::new(move |s: Complex64| (-k * s.powf(nu)).exp(), "negative real axis (principal s^nu)")
}

/// |2ν x G_c(x, t) - t G_s(x, t)|.
///
/// G_c goes through M_ν and G_s through the separate series for F_ν while
/// the series is in use, so the two sides share no arithmetic.
pub fn reciprocity_residual(cauchy: &GreenSpec, signalling: &GreenSpec, x: f64, t: f64) -> Result<f64> {
    cauchy.expect(ProblemKind::Cauchy)?;
    signalling.expect(ProblemKind::Signalling)?;
    if cauchy.a != signalling.a || cauchy.nu() != signalling.nu() {
        return Err(invalid("reciprocity compares two kinds of the same medium"));
    }
    if !(x > 0.0) {
        return Err(domain(format!("x must be positive, got {x}")));
    }
    let nu = cauchy.nu();
    let lhs = 2.0 * nu * x * green_cauchy(cauchy, x, t)?;
    let p = SimilarityPoint::new(x, t, signalling.a, nu)?;
    let series_side = signalling.policy.method() == Method::SeriesOnly || p.r <= signalling.policy.crossover_for(nu);
    let rhs = if series_side {
        f_wright_series(nu, p.r, &signalling.policy)?.value
    } else {
        t * green_signalling(signalling, x, t)?
    };
    Ok((lhs - rhs).abs())
}

/// Both sides of the scaling identity for the spec's kind:
/// Cauchy G_c(px, qt) = q^{-ν} G_c(px/q^ν, t), Signalling G_s(px, qt) = q^{-1} G_s(px/q^ν, t).
pub fn scale_map(spec: &GreenSpec, p: f64, q: f64, x: f64, t: f64) -> Result<(f64, f64)> {
    if !(p > 0.0 && q > 0.0) {
        return Err(invalid(format!("scale factors must be positive, got p = {p}, q = {q}")));
    }
    let qn = q.powf(spec.nu());
    match spec.kind {
        ProblemKind::Cauchy => Ok((green_cauchy(spec, p * x, q * t)?, green_cauchy(spec, p * x / qn, t)? / qn)),
        ProblemKind::Signalling => {
            Ok((green_signalling(spec, p * x, q * t)?, green_signalling(spec, p * x / qn, t)? / q))
        }
    }
}

/// ∫ x^{2n} G_c(x, t) dx = Γ(2n+1)/Γ(2νn+1) (a t^{2ν})^n.
pub fn green_cauchy_moment(spec: &GreenSpec, n: u32, t: f64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("moment order must be at least 1"));
    }
    if !(t > 0.0) {
        return Err(domain(format!("t must be positive, got {t}")));
    }
    let nu = spec.nu();
    let nf = n as f64;
    let scale = spec.a * t.powf(2.0 * nu);
    if 2.0 * nf <= 170.0 {
        Ok(gamma(2.0 * nf + 1.0) / gamma(2.0 * nu * nf + 1.0) * scale.powi(n as i32))
    } else {
        Ok((ln_gamma(2.0 * nf + 1.0) - ln_gamma(2.0 * nu * nf + 1.0) + nf * scale.ln()).exp())
    }
}

/// Least-squares slope of ln G_s against ln t on a geometric grid of 41
/// points in [t_lo, t_hi].
pub fn signalling_tail_exponent(spec: &GreenSpec, x: f64, t_lo: f64, t_hi: f64) -> Result<f64> {
    if !(t_lo > 0.0) {
        return Err(domain(format!("t_lo must be positive, got {t_lo}")));
    }
    let ratio = t_hi / t_lo;
    if !(ratio >= 100.0) {
        return Err(Error::InsufficientRange { ratio });
    }
    let n = 41;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        let lt = t_lo.ln() + ratio.ln() * i as f64 / (n - 1) as f64;
        let g = green_signalling(spec, x, lt.exp())?;
        if !(g > 0.0) {
            return Err(Error::InsufficientResolution(format!("G_s underflows at t = {}", lt.exp())));
        }
        let lg = g.ln();
        sx += lt;
        sy += lg;
        sxx += lt * lt;
        sxy += lt * lg;
    }
    let nf = n as f64;
    Ok((nf * sxy - sx * sy) / (nf * sxx - sx * sx))
}
