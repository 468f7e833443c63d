use std::f64::consts::PI;

use super::gamma::gamma;
use super::{m_wright_eval, EvalMethod, EvalPolicy, Evaluation, Method};
use crate::error::{domain, invalid, Error, Result};

/// Orders at or above this are rejected by the saddle-point branches.
pub const DEGENERATE_NU: f64 = 1.0 - 1e-6;

fn check(nu: f64, x: f64) -> Result<()> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(invalid(format!("nu must lie in (0, 1), got {nu}")));
    }
    if nu >= DEGENERATE_NU {
        return Err(Error::Degenerate { nu });
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("x must be finite and positive, got {x}")));
    }
    Ok(())
}

/// Leading-order saddle-point value of M_ν(x).
///
/// With r = ν x: r^{(ν-1/2)/(1-ν)} / √(2π(1-ν)) · exp(-((1-ν)/ν) r^{1/(1-ν)}).
/// Exact for ν = 1/2; for other orders the relative error decays only like
/// x^{-1/(1-ν)}.
pub fn m_wright_asymptotic(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    let r = nu * x;
    let q = 1.0 / (1.0 - nu);
    let ln = (nu - 0.5) * q * r.ln() - (1.0 - nu) / nu * r.powf(q);
    Ok(ln.exp() / (2.0 * PI * (1.0 - nu)).sqrt())
}

const K: usize = 18;

type Poly = [f64; K];

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut c = [0.0; K];
    for i in 0..K {
        if a[i] == 0.0 {
            continue;
        }
        for j in 0..K - i {
            c[i + j] += a[i] * b[j];
        }
    }
    c
}

/// (1 + x)^p for a series x with zero constant term.
fn binomial_compose(x: &Poly, p: f64) -> Poly {
    let mut out = [0.0; K];
    out[0] = 1.0;
    let mut power = out;
    let mut coef = 1.0;
    for k in 1..K {
        coef *= (p - k as f64 + 1.0) / k as f64;
        power = mul(&power, x);
        for i in 0..K {
            out[i] += coef * power[i];
        }
    }
    out
}

/// Σ a_j u^j with u itself a series (u_0 = 0).
fn compose(a: &Poly, u: &Poly) -> Poly {
    let mut out = [0.0; K];
    let mut power = [0.0; K];
    power[0] = 1.0;
    for aj in a.iter() {
        for i in 0..K {
            out[i] += aj * power[i];
        }
        power = mul(&power, u);
    }
    out
}

/// Coefficients c_j of h(1+u(ζ)) u'(ζ), where ζ is the
/// steepest-descent variable of g(w) = w - w^ν/ν about w = 1 and h(w) = w^{ν-1}.
fn saddle_coefficients(nu: f64) -> (Poly, f64) {
    // g(1+u) - g(1) = Σ_{k≥2} g_k u^k with g_k = -binom(ν, k)/ν
    let mut g = [0.0; K + 2];
    let mut binom = 1.0;
    for (k, gk) in g.iter_mut().enumerate() {
        if k > 0 {
            binom *= (nu - k as f64 + 1.0) / k as f64;
        }
        if k >= 2 {
            *gk = -binom / nu;
        }
    }
    let g2 = g[2];
    // ζ = u sqrt(1 + Σ_{k≥3} (g_k/g₂) u^{k-2})
    let mut q = [0.0; K];
    for k in 3..K + 2 {
        q[k - 2] = g[k] / g2;
    }
    let root = binomial_compose(&q, 0.5);
    // revert: u = ζ / root(u)
    let mut u = [0.0; K];
    u[1] = 1.0;
    for _ in 0..K + 2 {
        let comp = compose(&root, &u);
        let mut shifted = comp;
        shifted[0] = 0.0;
        let inv = binomial_compose(&shifted, -1.0);
        let mut next = [0.0; K];
        next[1..].copy_from_slice(&inv[..K - 1]);
        u = next;
    }
    let mut h = [0.0; K];
    let mut binom = 1.0;
    for (k, hk) in h.iter_mut().enumerate() {
        if k > 0 {
            binom *= (nu - 1.0 - k as f64 + 1.0) / k as f64;
        }
        *hk = binom;
    }
    let hu = compose(&h, &u);
    let mut du = [0.0; K];
    for j in 0..K - 1 {
        du[j] = (j + 1) as f64 * u[j + 1];
    }
    (mul(&hu, &du), g2)
}

/// Saddle-point expansion of M_ν(x) with up to `terms` correction terms.
///
/// Stops early at the smallest term of the (divergent) asymptotic series.
/// The error estimate is the magnitude of the first omitted term.
pub fn m_wright_saddle_expansion(nu: f64, x: f64, terms: usize) -> Result<Evaluation> {
    check(nu, x)?;
    let terms = terms.clamp(1, K / 2);
    let (c, g2) = saddle_coefficients(nu);
    let lam = (nu * x).powf(1.0 / (1.0 - nu));
    let ln_pref = nu * lam.ln() - lam * (1.0 - nu) / nu - (2.0 * PI).ln();
    let t = lam * g2;
    let term = |k: usize| {
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * c[2 * k] * gamma(k as f64 + 0.5) / t.powf(k as f64 + 0.5)
    };
    let mut sum = 0.0;
    let mut used = 0;
    let mut last = f64::INFINITY;
    let mut next = term(0);
    while used < terms {
        if next.abs() > last {
            break;
        }
        sum += next;
        last = next.abs();
        used += 1;
        next = if used < K / 2 { term(used) } else { 0.0 };
    }
    let omitted = if next.abs() > last { last } else { next.abs() };
    let pref = ln_pref.exp();
    Ok(Evaluation {
        value: pref * sum,
        method: EvalMethod::Asymptotic,
        terms: used,
        error_estimate: pref * omitted,
    })
}

/// A radius R with ∫_R^∞ M_ν(x) dx below `tail` (and likewise for the
/// moment weight x^n when `moment` > 0).
///
/// Uses twice the leading-order saddle form as an upper envelope, which
/// holds with room to spare once the saddle dominates, and the log-concavity
/// of that envelope to bound the tail by A(R) / |d ln A/dx|.
pub fn m_wright_tail_radius(nu: f64, moment: u32, tail: f64) -> Result<f64> {
    if !(nu > 0.0 && nu < DEGENERATE_NU) {
        return Err(invalid(format!("nu must lie in (0, 1 - 1e-6), got {nu}")));
    }
    if !(tail > 0.0) {
        return Err(invalid("tail tolerance must be positive"));
    }
    let q = 1.0 / (1.0 - nu);
    let p = (nu - 0.5) * q + moment as f64;
    let bound = |x: f64| -> f64 {
        let r = nu * x;
        let ln_a = (2.0f64).ln() + (nu - 0.5) * q * r.ln() + moment as f64 * x.ln()
            - (1.0 - nu) / nu * r.powf(q)
            - 0.5 * (2.0 * PI * (1.0 - nu)).ln();
        // -(d/dx) ln A
        let slope = (1.0 - nu) / nu * q * nu * r.powf(q - 1.0) - p / x;
        if slope <= 0.0 {
            f64::INFINITY
        } else {
            ln_a.exp() / slope
        }
    };
    let mut x = 2.0;
    while bound(x) > tail {
        x *= 1.1;
        if x > 1e12 {
            return Err(Error::NonConvergent { terms: 0, tail_bound: bound(x) });
        }
    }
    Ok(x)
}

/// Where the power series and the saddle-point expansion agree best.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapReport {
    pub nu: f64,
    /// r at which the relative discrepancy is smallest.
    pub r: f64,
    pub relative_discrepancy: f64,
    /// Scanned band [lo, hi] in which the series was still trustworthy.
    pub band: (f64, f64),
}

/// Scan the band between r = 1 and the point where the series loses its
/// accuracy, comparing it with the corrected saddle-point expansion.
pub fn series_asymptotic_overlap(nu: f64, policy: &EvalPolicy) -> Result<OverlapReport> {
    check(nu, 1.0)?;
    let series = policy.with_method(Method::SeriesOnly);
    let lo = 1.0;
    let mut best = (f64::NAN, f64::INFINITY);
    let mut hi = lo;
    let steps = 200;
    let top = 6.0 * policy.crossover_for(nu);
    for i in 0..=steps {
        let r = lo + (top - lo) * i as f64 / steps as f64;
        let s = match m_wright_eval(nu, r, &series) {
            Ok(s) => s,
            Err(_) => break,
        };
        if !(s.error_estimate <= 1e-5 * s.value.abs()) {
            break;
        }
        hi = r;
        let a = m_wright_saddle_expansion(nu, r, K / 2)?;
        let d = ((a.value - s.value) / s.value).abs();
        if d < best.1 {
            best = (r, d);
        }
    }
    Ok(OverlapReport { nu, r: best.0, relative_discrepancy: best.1, band: (lo, hi) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_order_exact_at_half() {
        let v = m_wright_asymptotic(0.5, 4.0).unwrap();
        let exact = (-4.0f64).exp() / PI.sqrt();
        assert!(((v - exact) / exact).abs() < 1e-14);
    }

    #[test]
    fn degenerate_guard() {
        assert!(matches!(m_wright_asymptotic(0.999_999_5, 1.0), Err(Error::Degenerate { .. })));
        assert!(m_wright_asymptotic(0.999, 1.0).is_ok());
    }

    #[test]
    fn first_coefficient_is_one() {
        let (c, g2) = saddle_coefficients(0.3);
        assert!((c[0] - 1.0).abs() < 1e-15);
        assert!((g2 - 0.35).abs() < 1e-15);
    }

    #[test]
    fn expansion_exact_at_half() {
        let e = m_wright_saddle_expansion(0.5, 3.0, 6).unwrap();
        let exact = (-2.25f64).exp() / PI.sqrt();
        assert!(((e.value - exact) / exact).abs() < 1e-13, "{e:?}");
    }

    #[test]
    fn tail_radius_grows_with_tighter_tolerance() {
        let a = m_wright_tail_radius(0.25, 0, 1e-6).unwrap();
        let b = m_wright_tail_radius(0.25, 0, 1e-12).unwrap();
        assert!(b > a);
    }
}
