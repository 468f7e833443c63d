use num_complex::Complex64;
use std::f64::consts::PI;

use super::{EvalMethod, Evaluation};
use crate::error::{Error, Result};
use crate::numeric::sum::CompensatedSum;

// Weideman-Trefethen cotangent contour σ(θ) = c (A + B θ cot(Cθ) + i D θ).
const A: f64 = -0.6122;
const B: f64 = 0.5017;
const C: f64 = 0.6407;
const D: f64 = 0.2645;
// σ(0) / c, where the contour crosses the positive real axis
const CROSSING: f64 = A + B / C;

const MAX_NODES: usize = 1 << 14;

/// M_ν(r) = (1/2πi) ∫ exp(σ - r σ^ν) σ^{ν-1} dσ on a Hankel loop.
///
/// The loop is a cotangent contour scaled to pass through the real saddle
/// σ* = (ν r)^{1/(1-ν)}. The integrand is conjugate-symmetric, so the
/// trapezoid rule runs over θ in [0, π] only. The node count doubles until two
/// successive rules agree to near machine precision; the last difference is
/// the error estimate.
pub fn m_wright_contour(nu: f64, r: f64) -> Result<Evaluation> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(crate::error::invalid(format!("nu must lie in (0, 1), got {nu}")));
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(crate::error::domain(format!("r must be finite and non-negative, got {r}")));
    }
    let saddle = if r > 0.0 { (nu * r).powf(1.0 / (1.0 - nu)) } else { 0.0 };
    // leading-order size of the result; below the subnormal range it is zero
    let ln_size = (nu - 0.5) / (1.0 - nu) * (nu * r).ln() - (1.0 - nu) / nu * saddle;
    if ln_size < -760.0 {
        return Ok(Evaluation { value: 0.0, method: EvalMethod::Contour, terms: 0, error_estimate: f64::MIN_POSITIVE });
    }
    let mut n = ((16.0 * (saddle * (1.0 - nu)).sqrt()).ceil() as usize).max(32);
    n += n % 2;
    // the scale is fixed once so that the refinements reuse the same contour
    let c0 = (n as f64).max(saddle / CROSSING);
    let mut c = c0;
    // Near ν = 1 the factor exp(-r σ^ν) nearly cancels exp(σ) and the
    // integrand is not yet negligible at θ = ±π; widen until it is.
    let end = Complex64::new(A + B * PI / (C * PI).tan(), D * PI);
    let end_nu = end.powf(nu);
    let target = -37.0 - (1.0 - nu) / nu * saddle;
    for _ in 0..200 {
        if c * end.re - r * c.powf(nu) * end_nu.re <= target {
            break;
        }
        c *= 1.25;
    }
    n = (n as f64 * c / c0).ceil() as usize;
    n += n % 2;

    let integrand = |theta: f64| -> f64 {
        let (s, ds) = if theta == 0.0 {
            (Complex64::new(c * CROSSING, 0.0), Complex64::new(0.0, c * D))
        } else {
            let cot = 1.0 / (C * theta).tan();
            let sin = (C * theta).sin();
            let s = Complex64::new(c * (A + B * theta * cot), c * D * theta);
            let ds = Complex64::new(c * (B * cot - B * C * theta / (sin * sin)), c * D);
            (s, ds)
        };
        let ln_s = s.ln();
        let expo = s - r * (nu * ln_s).exp() + (nu - 1.0) * ln_s;
        (expo.exp() * ds).im
    };

    let mut intervals = n / 2;
    let mut h = PI / intervals as f64;
    let mut sum = CompensatedSum::new();
    sum.add(0.5 * integrand(0.0));
    sum.add(0.5 * integrand(PI));
    for k in 1..intervals {
        sum.add(integrand(k as f64 * h));
    }
    let mut value = h / PI * sum.value();
    loop {
        intervals *= 2;
        h *= 0.5;
        for k in (1..intervals).step_by(2) {
            sum.add(integrand(k as f64 * h));
        }
        let refined = h / PI * sum.value();
        let diff = (refined - value).abs();
        let floor = 64.0 * f64::EPSILON * (h / PI * sum.peak());
        value = refined;
        let last = 2 * intervals > MAX_NODES;
        let converged = diff <= 4e-14 * value.abs() || diff <= floor || value.abs() < f64::MIN_POSITIVE;
        // at the node cap, settle for agreement well inside the oracle tolerances
        if converged || (last && diff <= 1e-10 * value.abs()) {
            return Ok(Evaluation {
                value: value.max(0.0),
                method: EvalMethod::Contour,
                terms: 2 * intervals,
                error_estimate: diff.max(floor).max(4e-14 * value.abs()),
            });
        }
        if last {
            return Err(Error::Unstable { coarse: value - diff, fine: value });
        }
    }
}
