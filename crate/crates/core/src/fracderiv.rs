//! Riemann-Liouville integrals, Riemann-Liouville and Caputo derivatives of
//! uniformly sampled functions.
//!
//! J^μ is discretized by the product trapezoidal rule: f is replaced by its
//! piecewise-linear interpolant, which is integrated exactly against the
//! kernel (t-τ)^{μ-1}/Γ(μ). The scheme is second order for smooth f.

use crate::error::{invalid, Error, Result};
use crate::numeric::diff::fd_weights;
use crate::numeric::sum::CompensatedSum;
use crate::special_fn::rgamma;

/// f(k dt), k = 0, 1, ..., starting at t = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    dt: f64,
    values: Vec<f64>,
    /// derivatives[k - 1] holds samples of f^{(k)}
    derivatives: Vec<Vec<f64>>,
    /// f^{(k)}(0+), k = 0, 1, ...
    initial_values: Option<Vec<f64>>,
}

impl SampledFunction {
    pub fn new(dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(invalid(format!("dt must be positive, got {dt}")));
        }
        if values.len() < 2 {
            return Err(invalid(format!("need at least 2 samples, got {}", values.len())));
        }
        Ok(Self { dt, values, derivatives: Vec::new(), initial_values: None })
    }

    /// Samples f at k dt for k = 0..n.
    pub fn from_fn(f: impl Fn(f64) -> f64, dt: f64, n: usize) -> Result<Self> {
        Self::new(dt, (0..n).map(|k| f(k as f64 * dt)).collect())
    }

    /// Attaches samples of the derivatives f', f'', ... in that order.
    pub fn with_derivatives(mut self, derivatives: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(d) = derivatives.iter().find(|d| d.len() != self.values.len()) {
            return Err(invalid(format!(
                "derivative samples have length {}, expected {}",
                d.len(),
                self.values.len()
            )));
        }
        self.derivatives = derivatives;
        Ok(self)
    }

    /// Attaches exact initial values f(0+), f'(0+), ...
    pub fn with_initial_values(mut self, initial_values: Vec<f64>) -> Self {
        self.initial_values = Some(initial_values);
        self
    }

    pub fn t_start(&self) -> f64 {
        0.0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn t_end(&self) -> f64 {
        (self.values.len() - 1) as f64 * self.dt
    }

    /// Index k with k dt = t.
    pub fn index_of(&self, t: f64) -> Result<usize> {
        let k = (t / self.dt).round();
        if !(t >= 0.0) || (k * self.dt - t).abs() > 1e-9 * self.dt.max(t) || k as usize >= self.values.len() {
            return Err(Error::OffGrid { t, dt: self.dt });
        }
        Ok(k as usize)
    }

    fn derivative_samples(&self, m: usize) -> Option<&[f64]> {
        self.derivatives.get(m - 1).map(|v| v.as_slice())
    }

    /// f^{(k)}(0+): the attached value when present, else a one-sided
    /// second-order difference.
    pub fn initial_value(&self, k: usize) -> Result<f64> {
        if let Some(v) = self.initial_values.as_ref().and_then(|iv| iv.get(k)) {
            return Ok(*v);
        }
        if k == 0 {
            return Ok(self.values[0]);
        }
        if let Some(d) = self.derivative_samples(k) {
            return Ok(d[0]);
        }
        let npts = k + 2;
        if self.values.len() < npts {
            return Err(Error::InsufficientResolution(format!("f^({k})(0+) needs {npts} samples")));
        }
        let xs: Vec<f64> = (0..npts).map(|i| i as f64).collect();
        let w = fd_weights(0.0, &xs, k);
        Ok(apply_weights(&w, &self.values[..npts]) / self.dt.powi(k as i32))
    }
}

/// Order μ > 0 with m = ⌈μ⌉, so m - 1 < μ ≤ m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOpOrder {
    mu: f64,
    m: usize,
}

impl FracOpOrder {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(invalid(format!("order mu must be positive, got {mu}")));
        }
        Ok(Self { mu, m: mu.ceil() as usize })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_integer(&self) -> bool {
        self.mu == self.m as f64
    }
}

/// (k+1)^p - 2k^p + (k-1)^p, k ≥ 1.
pub(crate) fn second_difference(k: usize, p: f64) -> f64 {
    let kf = k as f64;
    if k < 8 {
        return (kf + 1.0).powf(p) - 2.0 * kf.powf(p) + (kf - 1.0).powf(p);
    }
    // k^p [(1+h)^p - 2 + (1-h)^p] = 2 k^p Σ_{i≥1} C(p, 2i) h^{2i}, h = 1/k
    let h2 = 1.0 / (kf * kf);
    let mut binom = p * (p - 1.0) / 2.0;
    let mut hp = h2;
    let mut sum = binom * hp;
    let mut j = 2.0;
    loop {
        binom *= (p - j) * (p - j - 1.0) / ((j + 1.0) * (j + 2.0));
        hp *= h2;
        let term = binom * hp;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        j += 2.0;
    }
    2.0 * kf.powf(p) * sum
}

/// Weight of f_0 in the product-trapezoid sum for J^μ at t_n, without the
/// dt^μ/Γ(μ+2) factor: (n-1)^{μ+1} - (n-1-μ) n^μ.
pub(crate) fn trapezoid_endpoint_weight(n: usize, mu: f64) -> f64 {
    let nf = n as f64;
    if n < 8 {
        return (nf - 1.0).powf(mu + 1.0) - (nf - 1.0 - mu) * nf.powf(mu);
    }
    // n^μ Σ_{j≥2} C(μ+1, j) (-1)^j n^{1-j}; the direct form cancels badly
    let p = mu + 1.0;
    let h = 1.0 / nf;
    let mut binom = p * (p - 1.0) / 2.0;
    let mut hp = h;
    let mut sum = binom * hp;
    let mut j = 2.0;
    loop {
        binom *= -(p - j) / (j + 1.0);
        hp *= h;
        let term = binom * hp;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        j += 1.0;
    }
    nf.powf(mu) * sum
}

fn interior_weights(n_max: usize, mu: f64) -> Vec<f64> {
    (0..n_max).map(|k| if k == 0 { 0.0 } else { second_difference(k, mu + 1.0) }).collect()
}

fn rl_integral_at(values: &[f64], dt: f64, mu: f64, n: usize, interior: &[f64]) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let mut acc = CompensatedSum::new();
    acc.add(trapezoid_endpoint_weight(n, mu) * values[0]);
    for j in 1..n {
        acc.add(interior[n - j] * values[j]);
    }
    acc.add(values[n]);
    dt.powf(mu) * rgamma(mu + 2.0) * acc.value()
}

/// J^μ f(t) = (1/Γ(μ)) ∫_0^t (t-τ)^{μ-1} f(τ) dτ.
pub fn rl_integral(f: &SampledFunction, mu: f64, t: f64) -> Result<f64> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(invalid(format!("order mu must be positive, got {mu}")));
    }
    let n = f.index_of(t)?;
    let interior = interior_weights(n + 1, mu);
    Ok(rl_integral_at(&f.values, f.dt, mu, n, &interior))
}

/// J^μ f at every grid point.
pub fn rl_integral_samples(f: &SampledFunction, mu: f64) -> Result<Vec<f64>> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(invalid(format!("order mu must be positive, got {mu}")));
    }
    let interior = interior_weights(f.len(), mu);
    Ok((0..f.len()).map(|n| rl_integral_at(&f.values, f.dt, mu, n, &interior)).collect())
}

fn apply_weights(w: &[f64], v: &[f64]) -> f64 {
    // differences against one sample make constants vanish exactly
    let base = v[0];
    let mut acc = CompensatedSum::new();
    for (wi, vi) in w.iter().zip(v) {
        acc.add(wi * (vi - base));
    }
    acc.value()
}

/// m-th derivative of grid samples at index k: fourth order where a
/// centred stencil fits, one-sided near the ends.
fn grid_derivative(values: &[f64], dt: f64, m: usize, k: usize) -> Result<f64> {
    let npts = if m % 2 == 1 { m + 4 } else { m + 3 };
    if values.len() < npts {
        return Err(Error::InsufficientResolution(format!(
            "a derivative of order {m} needs {npts} samples, have {}",
            values.len()
        )));
    }
    let start = k.saturating_sub(npts / 2).min(values.len() - npts);
    let xs: Vec<f64> = (start..start + npts).map(|i| i as f64).collect();
    let w = fd_weights(k as f64, &xs, m);
    Ok(apply_weights(&w, &values[start..start + npts]) / dt.powi(m as i32))
}

const MIN_POINTS_BEFORE: usize = 8;

fn check_resolution(k: usize) -> Result<()> {
    if k < MIN_POINTS_BEFORE {
        return Err(Error::InsufficientResolution(format!(
            "only {k} samples before t; at least {MIN_POINTS_BEFORE} are needed"
        )));
    }
    Ok(())
}

/// D^μ f = D^m J^{m-μ} f.
pub fn rl_derivative(f: &SampledFunction, order: FracOpOrder, t: f64) -> Result<f64> {
    let k = f.index_of(t)?;
    check_resolution(k)?;
    let m = order.m;
    if order.is_integer() {
        return grid_derivative(&f.values, f.dt, m, k);
    }
    // J^{m-μ} f is needed on the stencil around k only
    let npts = if m % 2 == 1 { m + 4 } else { m + 3 };
    if f.len() < npts {
        return Err(Error::InsufficientResolution(format!("need {npts} samples, have {}", f.len())));
    }
    let hi = (k + npts / 2).min(f.len() - 1).max(npts - 1);
    let interior = interior_weights(hi + 1, m as f64 - order.mu);
    let lo = hi + 1 - npts;
    let g: Vec<f64> =
        (lo..=hi).map(|n| rl_integral_at(&f.values, f.dt, m as f64 - order.mu, n, &interior)).collect();
    grid_derivative(&g, f.dt, m, k - lo)
}

/// f^{(m)} at every grid point: attached samples when present, otherwise
/// finite differences.
fn mth_derivative_samples(f: &SampledFunction, m: usize) -> Result<Vec<f64>> {
    if let Some(d) = f.derivative_samples(m) {
        return Ok(d.to_vec());
    }
    (0..f.len()).map(|k| grid_derivative(&f.values, f.dt, m, k)).collect()
}

/// *D^μ f = J^{m-μ} D^m f.
pub fn caputo_derivative(f: &SampledFunction, order: FracOpOrder, t: f64) -> Result<f64> {
    let k = f.index_of(t)?;
    check_resolution(k)?;
    let m = order.m;
    if order.is_integer() {
        return match f.derivative_samples(m) {
            Some(d) => Ok(d[k]),
            None => grid_derivative(&f.values, f.dt, m, k),
        };
    }
    let d = mth_derivative_samples(f, m)?;
    let interior = interior_weights(k + 1, m as f64 - order.mu);
    Ok(rl_integral_at(&d, f.dt, m as f64 - order.mu, k, &interior))
}

/// Σ_{k<m} f^{(k)}(0+) t^{k-μ} / Γ(k-μ+1): the gap between the two
/// derivatives.
pub fn initial_value_correction(f: &SampledFunction, order: FracOpOrder, t: f64) -> Result<f64> {
    let mut sum = 0.0;
    for k in 0..order.m {
        let e = k as f64 - order.mu;
        sum += f.initial_value(k)? * t.powf(e) * rgamma(e + 1.0);
    }
    Ok(sum)
}

/// |D^μ f - *D^μ f - Σ_{k<m} f^{(k)}(0+) t^{k-μ}/Γ(k-μ+1)|.
pub fn caputo_rl_relation_residual(f: &SampledFunction, order: FracOpOrder, t: f64) -> Result<f64> {
    let rl = rl_derivative(f, order, t)?;
    let caputo = caputo_derivative(f, order, t)?;
    let corr = initial_value_correction(f, order, t)?;
    Ok((rl - caputo - corr).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeKind {
    Caputo,
    RiemannLiouville,
}

/// Trapezoidal Laplace transform of samples on [0, t_n].
fn sampled_transform(values: &[f64], dt: f64, s: f64, n: usize) -> f64 {
    let mut acc = CompensatedSum::new();
    for (k, v) in values[..=n].iter().enumerate() {
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        acc.add(w * (-s * k as f64 * dt).exp() * v);
    }
    dt * acc.value()
}

/// Checks the Laplace rule of a fractional derivative numerically.
///
///   Caputo: L{*D^μ f}(s) = s^μ f̃(s) - Σ_{k<m} s^{μ-1-k} f^{(k)}(0+)
///   RL:     L{D^μ f}(s)  = s^μ f̃(s)   (f^{(k)}(0+) finite)
///
/// Both sides use trapezoidal transforms truncated at the first grid time T
/// with e^{-sT} max|f| < 1e-8. Returns |lhs - rhs|.
pub fn verify_laplace_rule(f: &SampledFunction, order: FracOpOrder, s: f64, which: DerivativeKind) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(invalid(format!("s must be positive, got {s}")));
    }
    let peak = f.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if peak == 0.0 {
        return Ok(0.0);
    }
    let n = (1..f.len()).find(|&k| (-s * k as f64 * f.dt).exp() * peak < 1e-8).ok_or_else(|| {
        Error::NonConvergentTransform(format!(
            "e^(-s T) max|f| = {:e} at the last sample T = {}",
            (-s * f.t_end()).exp() * peak,
            f.t_end()
        ))
    })?;
    let m = order.m;
    let mu = order.mu;
    let derivative: Vec<f64> = match (which, order.is_integer()) {
        (_, true) => mth_derivative_samples(f, m)?,
        (DerivativeKind::Caputo, false) => {
            let d = SampledFunction::new(f.dt, mth_derivative_samples(f, m)?)?;
            rl_integral_samples(&d, m as f64 - mu)?
        }
        (DerivativeKind::RiemannLiouville, false) => {
            let g = rl_integral_samples(f, m as f64 - mu)?;
            (0..f.len()).map(|k| grid_derivative(&g, f.dt, m, k)).collect::<Result<_>>()?
        }
    };
    let lhs = sampled_transform(&derivative, f.dt, s, n);
    let mut rhs = s.powf(mu) * sampled_transform(&f.values, f.dt, s, n);
    if which == DerivativeKind::Caputo || order.is_integer() {
        for k in 0..m {
            rhs -= s.powf(mu - 1.0 - k as f64) * f.initial_value(k)?;
        }
    }
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn stable_second_difference() {
        for p in [1.3, 1.5, 2.7] {
            for k in [8usize, 20, 1000] {
                let kf = k as f64;
                let direct = (kf + 1.0).powf(p) - 2.0 * kf.powf(p) + (kf - 1.0).powf(p);
                let s = second_difference(k, p);
                assert!(((s - direct) / s).abs() < 1e-9, "p {p}, k {k}: {s} vs {direct}");
            }
        }
    }

    #[test]
    fn stable_endpoint_weight() {
        for mu in [0.3, 0.5, 1.7] {
            for n in [8usize, 50] {
                let nf = n as f64;
                let direct = (nf - 1.0).powf(mu + 1.0) - (nf - 1.0 - mu) * nf.powf(mu);
                let s = trapezoid_endpoint_weight(n, mu);
                assert!(((s - direct) / s).abs() < 1e-10, "mu {mu}, n {n}: {s} vs {direct}");
            }
        }
    }

    #[test]
    fn integral_of_constant_is_exact() {
        let f = SampledFunction::from_fn(|_| 1.0, 0.01, 101).unwrap();
        let v = rl_integral(&f, 0.5, 1.0).unwrap();
        assert!((v - 2.0 / PI.sqrt()).abs() < 1e-13, "{v}");
    }

    #[test]
    fn order_one_is_running_integral() {
        let f = SampledFunction::from_fn(|t| t * t, 0.001, 1001).unwrap();
        let v = rl_integral(&f, 1.0, 1.0).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn off_grid_and_resolution_errors() {
        let f = SampledFunction::from_fn(|t| t, 0.1, 20).unwrap();
        assert!(matches!(rl_integral(&f, 0.5, 0.55), Err(Error::OffGrid { .. })));
        assert!(matches!(rl_integral(&f, 0.5, 5.0), Err(Error::OffGrid { .. })));
        let o = FracOpOrder::new(0.5).unwrap();
        assert!(matches!(rl_derivative(&f, o, 0.5), Err(Error::InsufficientResolution(_))));
        assert!(SampledFunction::new(0.1, vec![1.0]).is_err());
        assert!(SampledFunction::new(0.0, vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn order_m() {
        assert_eq!(FracOpOrder::new(0.5).unwrap().m(), 1);
        assert_eq!(FracOpOrder::new(1.0).unwrap().m(), 1);
        assert_eq!(FracOpOrder::new(1.2).unwrap().m(), 2);
        assert!(FracOpOrder::new(0.0).is_err());
    }

    #[test]
    fn caputo_kills_constants_exactly() {
        let f = SampledFunction::from_fn(|_| 3.7, 0.01, 200).unwrap();
        for mu in [0.3, 0.5, 1.4] {
            let o = FracOpOrder::new(mu).unwrap();
            assert_eq!(caputo_derivative(&f, o, 1.5).unwrap(), 0.0);
        }
    }
}
