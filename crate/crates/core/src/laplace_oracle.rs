//! Numerical Laplace inversion used as an independent check on the series
//! and contour evaluators: a fixed-Talbot inverter and a Hankel-loop
//! quadrature for M_ν.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{domain, invalid, Error, Result};
use crate::numeric::quad::{composite_gauss_legendre, gauss_legendre};
use crate::numeric::sum::CompensatedSum;

type Evaluator = dyn Fn(Complex64) -> Complex64 + Send + Sync;

/// A Laplace transform F(s), analytic off a branch cut on the negative real
/// axis. Powers s^ν must use the principal branch, arg s in (-π, π).
pub struct TransformFn {
    eval: Box<Evaluator>,
    branch_cut: String,
}

impl TransformFn {
    pub fn new<F>(eval: F, branch_cut: impl Into<String>) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self { eval: Box::new(eval), branch_cut: branch_cut.into() }
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        (self.eval)(s)
    }

    pub fn branch_cut(&self) -> &str {
        &self.branch_cut
    }
}

impl std::fmt::Debug for TransformFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TransformFn").field("branch_cut", &self.branch_cut).finish_non_exhaustive()
    }
}

/// Node count and scale of an inversion contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    node_count: usize,
    contour_scale: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self { node_count: 128, contour_scale: 6.0 }
    }
}

impl ContourConfig {
    pub fn new(node_count: usize, contour_scale: f64) -> Result<Self> {
        if node_count < 8 || !node_count.is_multiple_of(2) {
            return Err(invalid(format!("node_count must be even and at least 8, got {node_count}")));
        }
        if !(contour_scale > 0.0) || !contour_scale.is_finite() {
            return Err(invalid(format!("contour_scale must be positive, got {contour_scale}")));
        }
        Ok(Self { node_count, contour_scale })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn contour_scale(&self) -> f64 {
        self.contour_scale
    }
}

/// An inverted value with its two-grid error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub value: f64,
    pub error_estimate: f64,
}

const ABS_FLOOR: f64 = 1e-12;

fn two_grid(coarse: f64, fine: f64) -> Result<Inversion> {
    let diff = (fine - coarse).abs();
    if !fine.is_finite() || diff > 1e-4 * coarse.abs().max(fine.abs()) + ABS_FLOOR {
        return Err(Error::Unstable { coarse, fine });
    }
    Ok(Inversion { value: fine, error_estimate: diff })
}

/// f(t) from F(s) by the fixed-Talbot rule.
///
/// Contour s(θ) = ρ θ (cot θ + i), θ in (-π, π), with ρ = contour_scale / t.
/// The rule with node_count/2 nodes uses every other node of the full rule,
/// so the two-grid estimate costs nothing extra.
pub fn talbot_invert(f: &TransformFn, t: f64, cfg: &ContourConfig) -> Result<Inversion> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(format!("t must be positive, got {t}")));
    }
    let m = cfg.node_count;
    let rho = cfg.contour_scale / t;
    let first = 0.5 * (f.eval(Complex64::new(rho, 0.0)).re * (rho * t).exp());
    let mut fine = CompensatedSum::new();
    let mut coarse = CompensatedSum::new();
    fine.add(first);
    coarse.add(first);
    for k in 1..m {
        let theta = k as f64 * PI / m as f64;
        let cot = 1.0 / theta.tan();
        let s = Complex64::new(rho * theta * cot, rho * theta);
        let sigma = theta + (theta * cot - 1.0) * cot;
        let ts = t * s;
        let mut term = (ts.exp() * f.eval(s) * Complex64::new(1.0, sigma)).re;
        // far along the contour e^{ts} underflows while F(s) may overflow;
        // the product is negligible there since F grows only like e^{c|s|^ν}
        if !term.is_finite() && ts.re < -700.0 {
            term = 0.0;
        }
        fine.add(term);
        if k % 2 == 0 {
            coarse.add(term);
        }
    }
    let fine_v = rho / m as f64 * fine.value();
    let coarse_v = rho / (m / 2) as f64 * coarse.value();
    two_grid(coarse_v, fine_v)
}

/// M_ν(r) by quadrature on a Hankel loop: two rays along the cut from
/// ρ = contour_scale to infinity joined by a circle of that radius.
///
/// Each piece uses composite 16-point Gauss-Legendre with node_count/8
/// panels; the estimate is compared with half as many panels.
pub fn bromwich_mwright(nu: f64, r: f64, cfg: &ContourConfig) -> Result<Inversion> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(invalid(format!("nu must lie in (0, 1), got {nu}")));
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(domain(format!("r must be finite and non-negative, got {r}")));
    }
    let rho0 = cfg.contour_scale;
    let (sin_pn, cos_pn) = (PI * nu).sin_cos();
    let log_mag = |rho: f64| -rho - r * rho.powf(nu) * cos_pn + (nu - 1.0) * rho.ln();
    // the rays are cut off once the integrand envelope falls 40 e-folds
    let mut rho_max = rho0.max(1.0) * 2.0;
    let reference = log_mag(rho0).max(0.0);
    while log_mag(rho_max) > reference - 40.0 {
        rho_max *= 1.25;
    }
    let ray = |rho: f64| {
        let rn = rho.powf(nu);
        (-rho - r * rn * cos_pn).exp() * rho.powf(nu - 1.0) * (PI * nu - r * rn * sin_pn).sin()
    };
    let circle = |phi: f64| {
        let s = Complex64::from_polar(rho0, phi);
        let ln_s = s.ln();
        (s - r * (nu * ln_s).exp() + nu * ln_s).exp().re
    };
    let rule = gauss_legendre(16);
    let panels = (cfg.node_count / 8).max(2);
    let estimate = |panels: usize| {
        let rays = composite_gauss_legendre(ray, rho0, rho_max, panels, &rule);
        let loop_part = composite_gauss_legendre(circle, 0.0, PI, panels, &rule);
        (rays + loop_part) / PI
    };
    two_grid(estimate(panels / 2), estimate(panels))
}
