//! Cauchy and Signalling problems for general data.
//!
//! Two independent routes: convolution with the Green functions (data taken
//! piecewise linear between samples, kernel integrated exactly against each
//! hat function), and a direct explicit march of the integro-differential form
//!   w(x, t) = w(x, 0) + (a / Γ(β)) ∫_0^t (t - τ)^{β-1} w_xx(x, τ) dτ
//! with zero initial velocity.

use std::io::Write;

use crate::error::{invalid, Error, Result};
use crate::fracderiv::{second_difference, trapezoid_endpoint_weight};
use crate::green::{green_cauchy, green_signalling, GreenSpec, ProblemKind};
use crate::numeric::quad::{gauss_legendre, integrate};
use crate::special_fn::rgamma;

/// Uniform spatial grid plus the output times.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    nx: usize,
    t_values: Vec<f64>,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, nx: usize, t_values: Vec<f64>) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(invalid(format!("need x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if nx < 3 {
            return Err(invalid(format!("need at least 3 grid points, got {nx}")));
        }
        if t_values.is_empty() || !(t_values[0] > 0.0) || t_values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("output times must be positive and strictly increasing"));
        }
        Ok(Self { x_min, x_max, nx, t_values })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.nx).map(|i| self.x_min + i as f64 * dx).collect()
    }

    pub fn t_values(&self) -> &[f64] {
        &self.t_values
    }
}

/// Sampled problem data: the initial profile on the x grid, or the boundary
/// signal on a uniform time grid starting at t = 0.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemData {
    Cauchy { initial: Vec<f64> },
    Signalling { signal: Vec<f64> },
}

impl ProblemData {
    pub fn cauchy_from_fn(grid: &Grid1D, f: impl Fn(f64) -> f64) -> Self {
        ProblemData::Cauchy { initial: grid.xs().into_iter().map(f).collect() }
    }

    pub fn signalling_from_fn(t_grid: &[f64], h: impl Fn(f64) -> f64) -> Self {
        ProblemData::Signalling { signal: t_grid.iter().map(|&t| h(t)).collect() }
    }

    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemData::Cauchy { .. } => ProblemKind::Cauchy,
            ProblemData::Signalling { .. } => ProblemKind::Signalling,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// Mass carried outside [x_min, x_max] by the time `t`.
    DomainTruncation { t: f64, edge_mass: f64 },
}

const EDGE_MASS_LIMIT: f64 = 1e-8;

/// w(x_i, t_k), one row per output time.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub warnings: Vec<Warning>,
}

impl Field {
    /// Trapezoidal ∫ w(x, t_k) dx.
    pub fn mass(&self, k: usize) -> f64 {
        trapezoid_mass(&self.values[k], self.xs[1] - self.xs[0])
    }

    pub fn max_abs_diff(&self, other: &Field) -> f64 {
        self.values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// CSV with header `x,t_<t0>,t_<t1>,...`, one row per grid point.
    pub fn write_csv(&self, out: &mut impl Write) -> Result<()> {
        let mut header = String::from("x");
        for t in &self.ts {
            header.push_str(&format!(",t_{t}"));
        }
        writeln!(out, "{header}")?;
        for (i, x) in self.xs.iter().enumerate() {
            let mut line = format!("{x:.16e}");
            for row in &self.values {
                line.push_str(&format!(",{:.16e}", row[i]));
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

fn trapezoid_mass(v: &[f64], dx: f64) -> f64 {
    let n = v.len();
    dx * (v.iter().sum::<f64>() - 0.5 * (v[0] + v[n - 1]))
}

const PANEL_NODES: usize = 8;

/// ∫ g(u) du and ∫ g(u) (u - lo) / h du over [lo, lo + h], by `panels`
/// Gauss-Legendre panels.
fn cell_moments(g: &mut impl FnMut(f64) -> Result<f64>, lo: f64, h: f64, panels: usize, rule: &(Vec<f64>, Vec<f64>)) -> Result<(f64, f64)> {
    let (nodes, weights) = rule;
    let ph = h / panels as f64;
    let (mut m0, mut m1) = (0.0, 0.0);
    for p in 0..panels {
        let a = lo + p as f64 * ph;
        for (x, w) in nodes.iter().zip(weights) {
            let u = a + 0.5 * ph * (x + 1.0);
            let gu = g(u)? * 0.5 * ph * w;
            m0 += gu;
            m1 += gu * (u - lo) / h;
        }
    }
    Ok((m0, m1))
}

/// Hat-weighted kernel K_d = ∫ G_c(u, t) φ(u - d dx) du, d = 0, 1, ...; the
/// tail past the last entry is negligible.
fn cauchy_kernel(spec: &GreenSpec, t: f64, dx: f64, n: usize) -> Result<Vec<f64>> {
    let width = spec.a().sqrt() * t.powf(spec.nu());
    let panels = ((4.0 * dx / width).ceil() as usize).clamp(1, 4096);
    let rule = gauss_legendre(PANEL_NODES);
    let mut g = |u: f64| green_cauchy(spec, u, t);
    // cell [k dx, (k+1) dx] split between the hats of its left and right nodes
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut total = 0.0;
    for k in 0..n {
        let lo = k as f64 * dx;
        let (m0, m1) = cell_moments(&mut g, lo, dx, panels, &rule)?;
        left.push(m0 - m1);
        right.push(m1);
        total += m0;
        if lo > 2.0 * width && m0 <= 1e-18 * total {
            break;
        }
    }
    let cells = left.len();
    let mut kernel = Vec::with_capacity(cells + 1);
    // φ centred at 0 covers [-dx, dx]; G_c is even
    kernel.push(2.0 * left[0]);
    for d in 1..=cells {
        let from_left = right[d - 1];
        let from_right = if d < cells { left[d] } else { 0.0 };
        kernel.push(from_left + from_right);
    }
    Ok(kernel)
}

/// w(x, t) = ∫ G_c(x - ξ, t) f(ξ) dξ with f piecewise linear between samples
/// and zero beyond the grid.
pub fn solve_cauchy_convolution(spec: &GreenSpec, f: &ProblemData, grid: &Grid1D) -> Result<Field> {
    let ProblemData::Cauchy { initial } = f else {
        return Err(invalid("Cauchy convolution needs an initial profile"));
    };
    if initial.len() != grid.nx {
        return Err(invalid(format!("initial profile has {} samples, grid has {}", initial.len(), grid.nx)));
    }
    let spec = spec.with_kind(ProblemKind::Cauchy);
    let dx = grid.dx();
    let n = grid.nx;
    let mass0 = trapezoid_mass(initial, dx);
    let mut values = Vec::with_capacity(grid.t_values.len());
    let mut warnings = Vec::new();
    for &t in &grid.t_values {
        let kernel = cauchy_kernel(&spec, t, dx, n)?;
        let reach = kernel.len();
        let row: Vec<f64> = (0..n)
            .map(|i| {
                let lo = i.saturating_sub(reach - 1);
                let hi = (i + reach).min(n);
                (lo..hi).map(|j| initial[j] * kernel[i.abs_diff(j)]).sum()
            })
            .collect();
        let edge_mass = (mass0 - trapezoid_mass(&row, dx)).abs();
        if edge_mass > EDGE_MASS_LIMIT {
            warnings.push(Warning::DomainTruncation { t, edge_mass });
        }
        values.push(row);
    }
    Ok(Field { xs: grid.xs(), ts: grid.t_values.clone(), values, warnings })
}

fn uniform_step(t_grid: &[f64], from_zero: bool) -> Result<f64> {
    let step = if from_zero {
        if t_grid.len() < 2 || t_grid[0] != 0.0 {
            return Err(invalid("time grid must start at t = 0 and have at least two points"));
        }
        t_grid[1]
    } else {
        t_grid[0]
    };
    if !(step > 0.0) {
        return Err(invalid("time step must be positive"));
    }
    let offset = if from_zero { 0.0 } else { 1.0 };
    for (k, &t) in t_grid.iter().enumerate() {
        let expected = (k as f64 + offset) * step;
        if (t - expected).abs() > 1e-9 * expected.max(step) {
            return Err(Error::OffGrid { t, dt: step });
        }
    }
    Ok(step)
}

/// w(x, t_n) = ∫_0^{t_n} G_s(x, t_n - τ) h(τ) dτ on a uniform grid t_k = k dt,
/// h piecewise linear between samples. w at t_n uses h_0..h_n only.
pub fn solve_signalling_convolution(spec: &GreenSpec, h: &ProblemData, t_grid: &[f64], x: f64) -> Result<Vec<f64>> {
    let ProblemData::Signalling { signal } = h else {
        return Err(invalid("Signalling convolution needs a boundary signal"));
    };
    if signal.len() != t_grid.len() {
        return Err(invalid(format!("signal has {} samples, time grid has {}", signal.len(), t_grid.len())));
    }
    if !(x > 0.0) {
        return Err(crate::error::domain(format!("station must satisfy x > 0, got {x}")));
    }
    let dt = uniform_step(t_grid, true)?;
    let spec = spec.with_kind(ProblemKind::Signalling);
    let n = t_grid.len();
    // cells [k dt, (k+1) dt] in the lag v = t - τ
    let mut early = Vec::with_capacity(n - 1);
    let mut late = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let lo = k as f64 * dt;
        let hi = lo + dt;
        let g = |v: f64| signalling_kernel(&spec, x, v);
        let m0 = integrate(g, lo, hi, 1e-15, 1e-13, 200).value;
        let m1 = integrate(|v| g(v) * (v - lo) / dt, lo, hi, 1e-15, 1e-13, 200).value;
        // h_j enters with m1, h_{j+1} with m0 - m1, where k = n - j - 1
        early.push(m1);
        late.push(m0 - m1);
    }
    let mut out = vec![0.0; n];
    for (nn, slot) in out.iter_mut().enumerate().skip(1) {
        let mut acc = 0.0;
        for j in 0..nn {
            let k = nn - j - 1;
            acc += signal[j] * early[k] + signal[j + 1] * late[k];
        }
        *slot = acc;
    }
    Ok(out)
}

fn signalling_kernel(spec: &GreenSpec, x: f64, v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    // far ahead of the signal the kernel underflows; evaluators may reject it
    green_signalling(spec, x, v).unwrap_or(0.0)
}

/// Largest time step allowed by dt^β ≤ 0.4 dx² / a.
pub fn stable_time_step(spec: &GreenSpec, dx: f64) -> f64 {
    (STABILITY_FACTOR * dx * dx / spec.a()).powf(1.0 / spec.order().beta())
}

pub const STABILITY_FACTOR: f64 = 0.4;
const MAX_STEPS: usize = 20_000;
const GROWTH_LIMIT: f64 = 10.0;

/// Explicit predictor-corrector march of the integro-differential form.
/// Output times must be multiples t_k = (k+1) Δ of the first; each Δ is split
/// into the fewest equal steps meeting the stability bound. Edges are held
/// at zero.
pub fn solve_direct_scheme(spec: &GreenSpec, data: &ProblemData, grid: &Grid1D) -> Result<Field> {
    let ProblemData::Cauchy { initial } = data else {
        return Err(invalid("the direct scheme solves the Cauchy problem only"));
    };
    if initial.len() != grid.nx {
        return Err(invalid(format!("initial profile has {} samples, grid has {}", initial.len(), grid.nx)));
    }
    let out_step = uniform_step(&grid.t_values, false)?;
    let beta = spec.order().beta();
    let a = spec.a();
    let dx = grid.dx();
    let substeps = (out_step / stable_time_step(spec, dx) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    let dt = out_step / substeps as f64;
    let steps = substeps * grid.t_values.len();
    if steps > MAX_STEPS {
        return Err(invalid(format!("stability bound needs {steps} time steps (limit {MAX_STEPS})")));
    }

    let nx = grid.nx;
    let mut w0 = initial.clone();
    w0[0] = 0.0;
    w0[nx - 1] = 0.0;
    let w0_max = w0.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let laplacian = |w: &[f64]| -> Vec<f64> {
        let mut l = vec![0.0; nx];
        for i in 1..nx - 1 {
            l[i] = a * (w[i - 1] - 2.0 * w[i] + w[i + 1]) / (dx * dx);
        }
        l
    };

    let p = beta + 1.0;
    let rect: Vec<f64> = (0..=steps).map(|k| ((k + 1) as f64).powf(beta) - (k as f64).powf(beta)).collect();
    let interior: Vec<f64> = (0..=steps).map(|k| if k == 0 { 0.0 } else { second_difference(k, p) }).collect();
    let c_pred = dt.powf(beta) * rgamma(beta + 1.0);
    let c_corr = dt.powf(beta) * rgamma(beta + 2.0);

    let mut history: Vec<Vec<f64>> = vec![laplacian(&w0)];
    let mut values = Vec::with_capacity(grid.t_values.len());
    for n in 0..steps {
        let mut predicted = w0.clone();
        for (j, lj) in history.iter().enumerate() {
            let c = c_pred * rect[n - j];
            for (wi, li) in predicted.iter_mut().zip(lj) {
                *wi += c * li;
            }
        }
        let l_pred = laplacian(&predicted);
        let mut next = w0.clone();
        let e = c_corr * trapezoid_endpoint_weight(n + 1, beta);
        for (wi, li) in next.iter_mut().zip(&history[0]) {
            *wi += e * li;
        }
        for (j, lj) in history.iter().enumerate().skip(1) {
            let c = c_corr * interior[n + 1 - j];
            for (wi, li) in next.iter_mut().zip(lj) {
                *wi += c * li;
            }
        }
        for (wi, li) in next.iter_mut().zip(&l_pred) {
            *wi += c_corr * li;
        }
        let t = (n + 1) as f64 * dt;
        let w_max = next.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if !w_max.is_finite() || w_max > GROWTH_LIMIT * w0_max {
            return Err(Error::SchemeUnstable { t, growth: w_max / w0_max });
        }
        history.push(laplacian(&next));
        if (n + 1) % substeps == 0 {
            values.push(next);
        }
    }
    Ok(Field { xs: grid.xs(), ts: grid.t_values.clone(), values, warnings: Vec::new() })
}
