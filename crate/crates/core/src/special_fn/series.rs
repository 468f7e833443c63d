use super::gamma::{ln_gamma, ln_rgamma, rgamma};
use super::{EvalMethod, EvalPolicy, Evaluation, WrightParams};
use crate::error::{Error, Result};
use crate::numeric::sum::CompensatedSum;

/// Upper bound on ln|1/Γ(x)|, dropping the |sin| factor of the reflection
/// formula so the bound is smooth through the poles.
fn ln_rgamma_envelope(x: f64) -> f64 {
    if x >= 0.5 {
        -ln_gamma(x)
    } else {
        ln_gamma(1.0 - x) - std::f64::consts::PI.ln()
    }
}

/// Σ z^n / (n! Γ(λn+μ)) with compensated summation.
///
/// Terms are formed in log space so that neither z^n/n! nor 1/Γ overflows on
/// its own. Summation stops once a ratio bound on the envelope of the
/// remaining terms drops below both `series_tol` and the rounding level of
/// the partial sum.
pub fn wright_series_eval(p: WrightParams, z: f64, policy: &EvalPolicy) -> Result<Evaluation> {
    if !z.is_finite() {
        return Err(crate::error::domain(format!("z must be finite, got {z}")));
    }
    let (lam, mu) = (p.lambda(), p.mu());
    if z == 0.0 {
        return Ok(Evaluation { value: rgamma(mu), method: EvalMethod::Series, terms: 1, error_estimate: 0.0 });
    }
    let ln_z = z.abs().ln();
    let negative = z < 0.0;
    let envelope = |n: usize| {
        let nf = n as f64;
        nf * ln_z - ln_gamma(nf + 1.0) + ln_rgamma_envelope(lam * nf + mu)
    };

    let mut acc = CompensatedSum::new();
    // each term carries the rounding of the logs it was built from
    let mut term_error = 0.0;
    let mut prev_step = f64::INFINITY;
    let mut env_next = envelope(0);
    for n in 0..policy.max_terms() {
        let nf = n as f64;
        if let Some((ln_r, sign)) = ln_rgamma(lam * nf + mu) {
            let ln_fact = ln_gamma(nf + 1.0);
            let ln_t = nf * ln_z - ln_fact + ln_r;
            let parity = if negative && n % 2 == 1 { -1.0 } else { 1.0 };
            let t = ln_t.exp();
            acc.add(parity * sign * t);
            term_error += t * f64::EPSILON * (4.0 + (nf * ln_z).abs() + ln_fact + ln_r.abs());
        }
        let env_n = env_next;
        env_next = envelope(n + 1);
        let step = env_next - env_n;
        // past the peak with shrinking ratios: tail <= t_{n+1} / (1 - q)
        if step < 0.0 && step <= prev_step {
            let q = step.exp();
            let tail = env_next.exp() / (1.0 - q);
            let target = policy.series_tol().min(f64::EPSILON * acc.value().abs());
            if tail <= target || env_next < -745.0 {
                return Ok(Evaluation {
                    value: acc.value(),
                    method: EvalMethod::Series,
                    terms: n + 1,
                    error_estimate: tail + term_error + acc.rounding_estimate(),
                });
            }
        }
        prev_step = step;
    }
    let tail = env_next.exp();
    Err(Error::NonConvergent { terms: policy.max_terms(), tail_bound: tail })
}
