//! Command-line surface: figure datasets and one-off evaluations, written as
//! CSV or JSON.
//!
//! CSV layout (schema 1): `#`-prefixed metadata lines (tool, schema, dataset,
//! config echo, ordinate scale, annotations), then one header line and one row
//! per sample. Floats carry 17 significant digits.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::fracderiv::{caputo_derivative, rl_derivative, rl_integral, FracOpOrder, SampledFunction};
use crate::green::{green_cauchy, green_cauchy_eval, green_signalling, green_signalling_eval, GreenSpec};
use crate::special_fn::{gamma, m_wright_eval, EvalPolicy, FractionalOrder, Method};
use crate::stable::{stable_pdf, StableParams};
use crate::visco::{gamma_from_q, q_factor};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "fracwave", version, about = "Fractional diffusion-wave fundamental solutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dataset behind a figure: fig1, fig2, b1 or b2.
    Figure {
        name: String,
        #[command(flatten)]
        opts: Options,
    },
    /// Evaluate one quantity at a point or over --range.
    Eval {
        #[arg(value_enum)]
        what: EvalTarget,
        #[command(flatten)]
        opts: Options,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalTarget {
    Mwright,
    Green,
    Stable,
    Fracderiv,
    Qfactor,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodArg {
    #[default]
    Auto,
    Series,
    Asymptotic,
    Contour,
}

impl MethodArg {
    fn method(self) -> Method {
        match self {
            MethodArg::Auto => Method::Auto,
            MethodArg::Series => Method::SeriesOnly,
            MethodArg::Asymptotic => Method::AsymptoticOnly,
            MethodArg::Contour => Method::Contour,
        }
    }

    fn name(self) -> &'static str {
        match self {
            MethodArg::Auto => "auto",
            MethodArg::Series => "series",
            MethodArg::Asymptotic => "asymptotic",
            MethodArg::Contour => "contour",
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
#[group(multiple = false)]
pub struct OrderArgs {
    /// ν in (0, 1]
    #[arg(long)]
    pub nu: Option<f64>,
    /// β = 2ν in (0, 2]
    #[arg(long)]
    pub beta: Option<f64>,
    /// γ = 2 - β in [0, 2)
    #[arg(long)]
    pub gamma: Option<f64>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    #[command(flatten)]
    pub order: OrderArgs,
    /// diffusivity a
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    /// abscissa range lo:hi
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    pub range: Option<(f64, f64)>,
    /// number of samples (grid points, or time steps for fracderiv)
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// series truncation tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    pub method: MethodArg,
    /// emit log10 of the ordinates
    #[arg(long)]
    pub log_scale: bool,
    /// stable index α (eval stable)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// stable skewness θ (eval stable)
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// operator order μ (eval fracderiv)
    #[arg(long)]
    pub mu: Option<f64>,
    /// exponent p of the test function t^p (eval fracderiv)
    #[arg(long)]
    pub power: Option<f64>,
    /// inverse quality factor (eval qfactor)
    #[arg(long)]
    pub q_inv: Option<f64>,
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    Ok((lo, hi))
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub order: Option<FractionalOrder>,
    pub a: f64,
    pub x: Option<f64>,
    pub t: Option<f64>,
    pub range: Option<(f64, f64)>,
    pub n: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub tol: Option<f64>,
    pub method: MethodArg,
    pub log_scale: bool,
    pub alpha: Option<f64>,
    pub theta: Option<f64>,
    pub mu: Option<f64>,
    pub power: Option<f64>,
    pub q_inv: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::from_options(Options { a: 1.0, ..Options::default() }).expect("defaults are valid")
    }
}

impl RunConfig {
    pub fn from_options(o: Options) -> Result<Self> {
        let order = match (o.order.nu, o.order.beta, o.order.gamma) {
            (Some(nu), None, None) => Some(FractionalOrder::from_nu(nu)?),
            (None, Some(beta), None) => Some(FractionalOrder::from_beta(beta)?),
            (None, None, Some(gamma)) => Some(FractionalOrder::from_gamma(gamma)?),
            (None, None, None) => None,
            _ => return Err(invalid("give at most one of --nu, --beta, --gamma")),
        };
        if !(o.a > 0.0) || !o.a.is_finite() {
            return Err(invalid(format!("--a must be positive, got {}", o.a)));
        }
        if let Some(n) = o.n {
            if n < 2 {
                return Err(invalid(format!("--n must be at least 2, got {n}")));
            }
        }
        if let Some((lo, hi)) = o.range {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(invalid(format!("--range needs lo < hi, got {lo}:{hi}")));
            }
        }
        Ok(RunConfig {
            order,
            a: o.a,
            x: o.x,
            t: o.t,
            range: o.range,
            n: o.n,
            out: o.out,
            format: o.format,
            tol: o.tol,
            method: o.method,
            log_scale: o.log_scale,
            alpha: o.alpha,
            theta: o.theta,
            mu: o.mu,
            power: o.power,
            q_inv: o.q_inv,
        })
    }

    pub fn policy(&self) -> Result<EvalPolicy> {
        let policy = EvalPolicy::new().with_method(self.method.method());
        match self.tol {
            Some(tol) => policy.with_series_tol(tol),
            None => Ok(policy),
        }
    }

    fn require_order(&self) -> Result<FractionalOrder> {
        self.order.ok_or_else(|| invalid("one of --nu, --beta, --gamma is required"))
    }

    /// Abscissae: --range with --n points, else the single --x (or `fallback`).
    fn points(&self, single: Option<f64>, fallback: f64, default_n: usize) -> Vec<f64> {
        match self.range {
            Some((lo, hi)) => linspace(lo, hi, self.n.unwrap_or(default_n)),
            None => vec![single.unwrap_or(fallback)],
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { hi } else { lo + i as f64 * h }).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// A distributional feature reported beside the data, e.g. a delta of
/// weight `weight` at `location`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Annotation {
    pub kind: String,
    pub nu: f64,
    pub location: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    pub name: String,
    pub config: Vec<(String, String)>,
    pub ordinate: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub annotations: Vec<Annotation>,
}

#[derive(Serialize)]
struct JsonDoc<'a> {
    tool: &'static str,
    version: &'static str,
    schema: u32,
    #[serde(flatten)]
    data: &'a Dataset,
}

impl Dataset {
    fn new(name: &str, config: Vec<(String, String)>, columns: &[&str]) -> Self {
        Dataset {
            name: name.to_string(),
            config,
            ordinate: "linear".into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            annotations: Vec::new(),
        }
    }

    /// Column `name` as numbers (text cells become NaN).
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match &r[k] {
                    Cell::Num(v) => *v,
                    Cell::Text(_) => f64::NAN,
                })
                .collect(),
        )
    }

    /// Replace every ordinate (all numeric columns but the first) by log10.
    fn apply_log_scale(&mut self) {
        self.ordinate = "log10".into();
        for row in &mut self.rows {
            for cell in row.iter_mut().skip(1) {
                if let Cell::Num(v) = cell {
                    *v = v.log10();
                }
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# tool: fracwave {TOOL_VERSION}");
        let _ = writeln!(s, "# schema: {SCHEMA_VERSION}");
        let _ = writeln!(s, "# dataset: {}", self.name);
        for (k, v) in &self.config {
            let _ = writeln!(s, "# {k}: {v}");
        }
        let _ = writeln!(s, "# ordinate: {}", self.ordinate);
        for a in &self.annotations {
            let _ = writeln!(
                s,
                "# annotation: kind={},nu={},location={:.16e},weight={:.16e}",
                a.kind, a.nu, a.location, a.weight
            );
        }
        let _ = writeln!(s, "{}", self.columns.join(","));
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(s, "{}", line.join(","));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let doc = JsonDoc { tool: "fracwave", version: TOOL_VERSION, schema: SCHEMA_VERSION, data: self };
        let mut s = serde_json::to_string_pretty(&doc).expect("dataset serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn nu_column(nu: f64) -> String {
    format!("nu_{nu}")
}

fn echo(cfg: &RunConfig, extra: &[(&str, String)]) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = extra.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    v.push(("method".into(), cfg.method.name().into()));
    if let Some(tol) = cfg.tol {
        v.push(("tol".into(), format!("{tol:e}")));
    }
    v
}

fn range_text(lo: f64, hi: f64) -> String {
    format!("{lo}:{hi}")
}

/// The dataset of a figure.
pub fn figure_dataset(name: &str, cfg: &RunConfig) -> Result<Dataset> {
    let policy = cfg.policy()?;
    let mut ds = match name {
        "fig1" => {
            let (lo, hi) = cfg.range.unwrap_or((0.0, 4.0));
            let n = cfg.n.unwrap_or(401);
            let t = cfg.t.unwrap_or(1.0);
            let nus = [0.25, 0.5, 0.75];
            let cols: Vec<String> = nus.iter().map(|&nu| nu_column(nu)).collect();
            let mut header = vec!["x"];
            header.extend(cols.iter().map(String::as_str));
            let config = echo(
                cfg,
                &[("quantity", "G_c(x,t)".into()), ("a", cfg.a.to_string()), ("t", t.to_string()), ("range", range_text(lo, hi)), ("n", n.to_string())],
            );
            let mut ds = Dataset::new(name, config, &header);
            let specs: Vec<GreenSpec> = nus.iter().map(|&nu| Ok(GreenSpec::cauchy(cfg.a, nu)?.with_policy(policy))).collect::<Result<_>>()?;
            for x in linspace(lo, hi, n) {
                let mut row = vec![Cell::Num(x)];
                for spec in &specs {
                    row.push(Cell::Num(green_cauchy(spec, x, t)?));
                }
                ds.rows.push(row);
            }
            ds
        }
        "fig2" => {
            let (lo, hi) = cfg.range.unwrap_or((0.0, 3.0));
            if lo < 0.0 {
                return Err(invalid("fig2 needs t >= 0"));
            }
            let n = cfg.n.unwrap_or(301);
            let x = cfg.x.unwrap_or(1.0);
            if !(x > 0.0) {
                return Err(invalid("fig2 needs x > 0"));
            }
            let nus = [0.25, 0.5, 0.75];
            let cols: Vec<String> = nus.iter().map(|&nu| nu_column(nu)).collect();
            let mut header = vec!["t"];
            header.extend(cols.iter().map(String::as_str));
            let config = echo(
                cfg,
                &[("quantity", "G_s(x,t)".into()), ("a", cfg.a.to_string()), ("x", x.to_string()), ("range", range_text(lo, hi)), ("n", n.to_string())],
            );
            let mut ds = Dataset::new(name, config, &header);
            let specs: Vec<GreenSpec> =
                nus.iter().map(|&nu| Ok(GreenSpec::signalling(cfg.a, nu)?.with_policy(policy))).collect::<Result<_>>()?;
            for t in linspace(lo, hi, n) {
                let mut row = vec![Cell::Num(t)];
                for spec in &specs {
                    // G_s(x, t) → 0 as t → 0+
                    let v = if t == 0.0 { 0.0 } else { green_signalling(spec, x, t)? };
                    row.push(Cell::Num(v));
                }
                ds.rows.push(row);
            }
            ds
        }
        "b1" | "b2" => {
            let (lo, hi) = cfg.range.unwrap_or((-5.0, 5.0));
            let n = cfg.n.unwrap_or(201);
            let nus: &[f64] = if name == "b1" { &[0.0, 0.125, 0.25, 0.375, 0.5] } else { &[0.5, 0.625, 0.75] };
            let cols: Vec<String> = nus.iter().map(|&nu| nu_column(nu)).collect();
            let mut header = vec!["x"];
            header.extend(cols.iter().map(String::as_str));
            let config = echo(cfg, &[("quantity", "M_nu(|x|)".into()), ("range", range_text(lo, hi)), ("n", n.to_string())]);
            let mut ds = Dataset::new(name, config, &header);
            for x in linspace(lo, hi, n) {
                let mut row = vec![Cell::Num(x)];
                for &nu in nus {
                    row.push(Cell::Num(m_wright_eval(nu, x.abs(), &policy)?.value));
                }
                ds.rows.push(row);
            }
            if name == "b2" {
                // M_1(|x|) = δ(x - 1) + δ(x + 1)
                for location in [-1.0, 1.0] {
                    if (lo..=hi).contains(&location) {
                        ds.annotations.push(Annotation { kind: "impulse".into(), nu: 1.0, location, weight: 1.0 });
                    }
                }
            }
            ds
        }
        other => return Err(Error::UnknownFigure(other.to_string())),
    };
    if cfg.log_scale {
        ds.apply_log_scale();
    }
    Ok(ds)
}

fn eval_mwright(cfg: &RunConfig, policy: &EvalPolicy) -> Result<Dataset> {
    let nu = cfg.require_order()?.nu();
    let config = echo(cfg, &[("quantity", "M_nu(r)".into()), ("nu", nu.to_string())]);
    let mut ds = Dataset::new("mwright", config, &["r", "value", "error_estimate", "terms", "method"]);
    for r in cfg.points(cfg.x, 1.0, 11) {
        let e = m_wright_eval(nu, r, policy)?;
        ds.rows.push(vec![
            Cell::Num(r),
            Cell::Num(e.value),
            Cell::Num(e.error_estimate),
            Cell::Text(e.terms.to_string()),
            Cell::Text(e.method.name().into()),
        ]);
    }
    Ok(ds)
}

fn eval_green(cfg: &RunConfig, policy: &EvalPolicy) -> Result<Dataset> {
    let order = cfg.require_order()?;
    let t = cfg.t.unwrap_or(1.0);
    let cauchy = GreenSpec::new(crate::green::ProblemKind::Cauchy, cfg.a, order)?.with_policy(*policy);
    let signalling = GreenSpec::new(crate::green::ProblemKind::Signalling, cfg.a, order)?.with_policy(*policy);
    let config = echo(cfg, &[("nu", order.nu().to_string()), ("a", cfg.a.to_string()), ("t", t.to_string())]);
    let mut ds = Dataset::new(
        "green",
        config,
        &["x", "cauchy", "cauchy_error", "signalling", "signalling_error", "method"],
    );
    for x in cfg.points(cfg.x, 1.0, 11) {
        let c = green_cauchy_eval(&cauchy, x, t)?;
        let (s, s_err) = if x > 0.0 {
            let s = green_signalling_eval(&signalling, x, t)?;
            (Cell::Num(s.value), Cell::Num(s.error_estimate))
        } else {
            (Cell::Text("undefined".into()), Cell::Text("undefined".into()))
        };
        ds.rows.push(vec![Cell::Num(x), Cell::Num(c.value), Cell::Num(c.error_estimate), s, s_err, Cell::Text(c.method.name().into())]);
    }
    Ok(ds)
}

fn eval_stable(cfg: &RunConfig, policy: &EvalPolicy) -> Result<Dataset> {
    let alpha = cfg.alpha.ok_or_else(|| invalid("eval stable needs --alpha"))?;
    let theta = cfg.theta.unwrap_or(0.0);
    let p = StableParams::new(alpha, theta)?;
    let config = echo(cfg, &[("alpha", alpha.to_string()), ("theta", theta.to_string())]);
    let mut ds = Dataset::new("stable", config, &["y", "density"]);
    for y in cfg.points(cfg.x, 0.0, 11) {
        ds.rows.push(vec![Cell::Num(y), Cell::Num(stable_pdf(&p, y, policy)?)]);
    }
    Ok(ds)
}

fn eval_fracderiv(cfg: &RunConfig) -> Result<Dataset> {
    let mu = cfg.mu.ok_or_else(|| invalid("eval fracderiv needs --mu"))?;
    let order = FracOpOrder::new(mu)?;
    let p = cfg.power.unwrap_or(1.0);
    if !(p >= 0.0) {
        return Err(invalid(format!("--power must be non-negative, got {p}")));
    }
    let t = cfg.t.unwrap_or(1.0);
    if !(t > 0.0) {
        return Err(invalid(format!("--t must be positive, got {t}")));
    }
    let steps = cfg.n.unwrap_or(1000);
    let dt = t / steps as f64;
    let f = SampledFunction::from_fn(|s: f64| s.powf(p), dt, steps + 1)?;
    let config = echo(cfg, &[("f", format!("t^{p}")), ("mu", mu.to_string()), ("t", t.to_string()), ("n", steps.to_string())]);
    let mut ds = Dataset::new("fracderiv", config, &["quantity", "value", "exact"]);
    let integral_exact = gamma(p + 1.0) / gamma(p + mu + 1.0) * t.powf(p + mu);
    ds.rows.push(vec![Cell::Text("rl_integral".into()), Cell::Num(rl_integral(&f, mu, t)?), Cell::Num(integral_exact)]);
    let deriv_exact = if p - mu + 1.0 <= 0.0 && (p - mu + 1.0).fract() == 0.0 {
        0.0
    } else {
        gamma(p + 1.0) / gamma(p - mu + 1.0) * t.powf(p - mu)
    };
    ds.rows.push(vec![Cell::Text("rl_derivative".into()), Cell::Num(rl_derivative(&f, order, t)?), Cell::Num(deriv_exact)]);
    ds.rows.push(vec![Cell::Text("caputo_derivative".into()), Cell::Num(caputo_derivative(&f, order, t)?), Cell::Text("-".into())]);
    Ok(ds)
}

fn eval_qfactor(cfg: &RunConfig) -> Result<Dataset> {
    let config = echo(cfg, &[]);
    let mut ds = Dataset::new("qfactor", config, &["quantity", "value"]);
    match (cfg.q_inv, cfg.order) {
        (Some(q_inv), None) => {
            ds.rows.push(vec![Cell::Text("q_inv".into()), Cell::Num(q_inv)]);
            ds.rows.push(vec![Cell::Text("gamma".into()), Cell::Num(gamma_from_q(q_inv)?)]);
        }
        (None, Some(order)) => {
            let g = order.gamma();
            let q_inv = q_factor(g)?;
            ds.rows.push(vec![Cell::Text("gamma".into()), Cell::Num(g)]);
            ds.rows.push(vec![Cell::Text("q_inv".into()), Cell::Num(q_inv)]);
            ds.rows.push(vec![Cell::Text("q".into()), Cell::Num(1.0 / q_inv)]);
        }
        _ => return Err(invalid("eval qfactor needs exactly one of --q-inv or an order (--gamma, --beta, --nu)")),
    }
    Ok(ds)
}

/// The dataset of an evaluation.
pub fn eval_dataset(what: EvalTarget, cfg: &RunConfig) -> Result<Dataset> {
    let policy = cfg.policy()?;
    let mut ds = match what {
        EvalTarget::Mwright => eval_mwright(cfg, &policy)?,
        EvalTarget::Green => eval_green(cfg, &policy)?,
        EvalTarget::Stable => eval_stable(cfg, &policy)?,
        EvalTarget::Fracderiv => eval_fracderiv(cfg)?,
        EvalTarget::Qfactor => eval_qfactor(cfg)?,
    };
    if cfg.log_scale {
        ds.apply_log_scale();
    }
    Ok(ds)
}

fn emit(ds: &Dataset, cfg: &RunConfig) -> Result<String> {
    let text = ds.render(cfg.format);
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Writes the figure to `--out` when given; otherwise returns the text.
pub fn cmd_figure(name: &str, cfg: &RunConfig) -> Result<String> {
    emit(&figure_dataset(name, cfg)?, cfg)
}

pub fn cmd_eval(what: EvalTarget, cfg: &RunConfig) -> Result<String> {
    emit(&eval_dataset(what, cfg)?, cfg)
}

/// Parse `args` (program name first) and run; returns what goes to stdout.
pub fn run<I, T>(args: I) -> std::result::Result<String, RunError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(RunError::Usage)?;
    let out = match cli.command {
        Command::Figure { name, opts } => cmd_figure(&name, &RunConfig::from_options(opts)?),
        Command::Eval { what, opts } => cmd_eval(what, &RunConfig::from_options(opts)?),
    };
    out.map_err(RunError::Failed)
}

#[derive(Debug)]
pub enum RunError {
    /// Bad command line, or --help / --version output.
    Usage(clap::Error),
    Failed(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Failed(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> RunConfig {
        let mut all = vec!["fracwave", "figure", "fig1"];
        all.extend_from_slice(args);
        match Cli::try_parse_from(all).unwrap().command {
            Command::Figure { opts, .. } => RunConfig::from_options(opts).unwrap(),
            Command::Eval { .. } => unreachable!(),
        }
    }

    #[test]
    fn order_flags_are_exclusive() {
        assert!(Cli::try_parse_from(["fracwave", "eval", "mwright", "--nu", "0.5", "--beta", "1"]).is_err());
        assert_eq!(cfg(&["--beta", "1.5"]).order.unwrap().nu(), 0.75);
        assert_eq!(cfg(&["--gamma", "1"]).order.unwrap().beta(), 1.0);
    }

    #[test]
    fn range_parsing() {
        assert_eq!(cfg(&["--range", "-5:5"]).range, Some((-5.0, 5.0)));
        assert!(Cli::try_parse_from(["fracwave", "figure", "b1", "--range", "5"]).is_err());
        let o = Options { a: 1.0, range: Some((2.0, 1.0)), ..Options::default() };
        assert!(RunConfig::from_options(o).is_err());
        let o = Options { a: 1.0, n: Some(1), ..Options::default() };
        assert!(RunConfig::from_options(o).is_err());
    }

    #[test]
    fn unknown_figure() {
        assert!(matches!(figure_dataset("fig9", &RunConfig::default()), Err(Error::UnknownFigure(_))));
    }

    #[test]
    fn fig1_header_and_origin() {
        let ds = figure_dataset("fig1", &RunConfig::default()).unwrap();
        assert_eq!(ds.columns, ["x", "nu_0.25", "nu_0.5", "nu_0.75"]);
        let v = ds.column("nu_0.5").unwrap()[0];
        assert!((v - 0.28209479177387814).abs() < 1e-15);
        let csv = ds.to_csv();
        assert!(csv.contains("\nx,nu_0.25,nu_0.5,nu_0.75\n"));
        assert!(csv.starts_with("# tool: fracwave"));
    }

    #[test]
    fn b2_has_impulse_annotations() {
        let ds = figure_dataset("b2", &RunConfig::default()).unwrap();
        assert_eq!(ds.annotations.len(), 2);
        assert!(ds.to_csv().contains("# annotation: kind=impulse,nu=1,location=-1.0000000000000000e0"));
        let json: serde_json::Value = serde_json::from_str(&ds.to_json()).unwrap();
        assert_eq!(json["annotations"][1]["location"], 1.0);
        assert_eq!(json["schema"], 1);
    }

    #[test]
    fn log_scale_transforms_ordinates_only() {
        let lin = figure_dataset("b1", &RunConfig::default()).unwrap();
        let log = figure_dataset("b1", &RunConfig { log_scale: true, ..RunConfig::default() }).unwrap();
        assert_eq!(lin.column("x"), log.column("x"));
        let (a, b) = (lin.column("nu_0.25").unwrap(), log.column("nu_0.25").unwrap());
        assert!(a.iter().zip(&b).all(|(a, b)| (a.log10() - b).abs() < 1e-15));
    }

    #[test]
    fn eval_targets() {
        let c = RunConfig { order: Some(FractionalOrder::from_nu(0.5).unwrap()), x: Some(2.0), ..RunConfig::default() };
        let ds = eval_dataset(EvalTarget::Mwright, &c).unwrap();
        let v = ds.column("value").unwrap()[0];
        assert!((v - (-1.0f64).exp() / std::f64::consts::PI.sqrt()).abs() < 1e-14);
        let q = RunConfig { q_inv: Some(1e-3), ..RunConfig::default() };
        let ds = eval_dataset(EvalTarget::Qfactor, &q).unwrap();
        assert!((ds.column("value").unwrap()[1] - 6.36619560161118e-4).abs() < 1e-17);
        let s = RunConfig { alpha: Some(2.0), x: Some(0.0), ..RunConfig::default() };
        let ds = eval_dataset(EvalTarget::Stable, &s).unwrap();
        assert!((ds.column("density").unwrap()[0] - 0.28209479177387814).abs() < 1e-15);
        let f = RunConfig { mu: Some(0.5), ..RunConfig::default() };
        let ds = eval_dataset(EvalTarget::Fracderiv, &f).unwrap();
        let rl = &ds.rows[1];
        assert!(matches!((&rl[1], &rl[2]), (Cell::Num(a), Cell::Num(b)) if (a - b).abs() < 1e-6));
        assert!(eval_dataset(EvalTarget::Green, &RunConfig::default()).is_err());
    }

    #[test]
    fn run_reports_usage_and_failures() {
        assert!(matches!(run(["fracwave", "figure"]), Err(RunError::Usage(_))));
        assert!(matches!(run(["fracwave", "figure", "nope"]), Err(RunError::Failed(Error::UnknownFigure(_)))));
        assert!(run(["fracwave", "eval", "qfactor", "--gamma", "0.5"]).unwrap().contains("q_inv,"));
    }
}
