//! Fundamental solutions of the time-fractional diffusion-wave equation.
//!
//! The Green functions of ∂^β w/∂t^β = a ∂²w/∂x² (0 < β ≤ 2) are self-similar
//! profiles built from the M-Wright function M_ν, ν = β/2. This crate
//! evaluates those functions, the Lévy stable densities they are tied to,
//! the Riemann-Liouville and Caputo operators on sampled data, and solves the
//! Cauchy and Signalling problems numerically.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod evolution;
pub mod fracderiv;
pub mod green;
pub mod laplace_oracle;
pub mod numeric;
pub mod special_fn;
pub mod stable;
pub mod visco;

pub use error::{Error, Result};
