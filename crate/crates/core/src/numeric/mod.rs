//! Summation, quadrature and differencing kernels shared by the evaluators.

pub mod diff;
pub mod quad;
pub mod sum;
