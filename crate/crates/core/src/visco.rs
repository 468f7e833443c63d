//! Power-law creep media: material constants, the induced fractional order
//! and the constant quality factor.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{invalid, Error, Result};
use crate::green::{GreenSpec, ProblemKind};
use crate::special_fn::{rgamma, FractionalOrder};

/// Density ρ, constant `a` (L² T^{γ-2}) and creep exponent γ ∈ [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    rho: f64,
    a: f64,
    gamma: f64,
}

impl MaterialParams {
    pub fn new(rho: f64, a: f64, gamma: f64) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(invalid(format!("density must be positive, got {rho}")));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(invalid(format!("a must be positive, got {a}")));
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(invalid(format!("creep exponent must lie in [0, 1], got {gamma}")));
        }
        Ok(Self { rho, a, gamma })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn order(&self) -> FractionalOrder {
        // γ ∈ [0, 1] is always a valid order
        order_from_creep(self.gamma).expect("validated creep exponent")
    }
}

/// J(t) = t^γ / (ρ a Γ(γ+1)).
pub fn creep_compliance(m: &MaterialParams, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(invalid(format!("creep compliance needs t > 0, got {t}")));
    }
    Ok(t.powf(m.gamma) * rgamma(m.gamma + 1.0) / (m.rho * m.a))
}

/// β = 2 - γ.
pub fn order_from_creep(gamma: f64) -> Result<FractionalOrder> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::OutOfRange {
            message: format!("creep exponent must lie in [0, 1], got {gamma}"),
            limit: None,
        });
    }
    FractionalOrder::from_gamma(gamma)
}

/// Q⁻¹ = tan(γπ/2) for 0 < γ < 1. The endpoints carry their limit
/// (0 for the elastic solid, +∞ for the viscous fluid) in the error.
pub fn q_factor(gamma: f64) -> Result<f64> {
    if gamma > 0.0 && gamma < 1.0 {
        return Ok((gamma * FRAC_PI_2).tan());
    }
    let limit = if gamma == 0.0 {
        Some(0.0)
    } else if gamma == 1.0 {
        Some(f64::INFINITY)
    } else {
        None
    };
    Err(Error::OutOfRange { message: format!("quality factor needs 0 < gamma < 1, got {gamma}"), limit })
}

/// γ = (2/π) arctan(Q⁻¹).
pub fn gamma_from_q(q_inv: f64) -> Result<f64> {
    if !(q_inv > 0.0) || !q_inv.is_finite() {
        return Err(Error::OutOfRange { message: format!("Q^-1 must be positive and finite, got {q_inv}"), limit: None });
    }
    Ok(2.0 / PI * q_inv.atan())
}

/// μ(s) = √(s^{2-γ} / a).
pub fn mu_of_s(m: &MaterialParams, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(invalid(format!("mu(s) needs s > 0, got {s}")));
    }
    Ok((s.powf(2.0 - m.gamma) / m.a).sqrt())
}

/// Green-function spec of the medium.
pub fn green_spec(m: &MaterialParams, kind: ProblemKind) -> Result<GreenSpec> {
    GreenSpec::new(kind, m.a, m.order())
}
