//! Basis tables, K on a grid and the heat-flow interpolant.

use clap::{Args, ValueEnum};
use serde_json::json;
use tachyon_core::basis::{gauss_hermite_rule, parseval_residual, project, Basis};
use tachyon_core::gaussop::apply_k_grid;
use tachyon_core::heatflow::Interpolant;

use super::announce;
use crate::error::{CliError, CliResult};
use crate::output::{csv, json_pretty, uniform, Output};
use crate::source::Source;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    H,
    V,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::H => Basis::H,
            BasisArg::V => Basis::V,
        }
    }
}

#[derive(Debug, Args)]
pub struct HermiteArgs {
    #[arg(long, value_enum, default_value = "h")]
    pub basis: BasisArg,
    /// Degree of the tabulated polynomial.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 3.0)]
    pub halfwidth: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Also project this function onto the basis up to `--order`.
    #[arg(long)]
    pub project: Option<Source>,
    #[arg(long, default_value_t = 20)]
    pub order: usize,
    /// Gauss-Hermite order M.
    #[arg(long, default_value_t = 96)]
    pub quadrature: usize,
}

pub fn hermite(args: &HermiteArgs, out: &Output) -> CliResult<()> {
    let basis = Basis::from(args.basis);
    let ts = uniform(args.halfwidth, args.step)?;
    let tag = format!("{}{}", if basis == Basis::H { "h" } else { "v" }, args.n);
    let table = csv(
        &["t", "value"],
        ts.iter().map(|&t| vec![t, basis.eval(args.n, t)]),
    );
    announce(&out.write(&format!("hermite_{tag}.csv"), &table)?);

    if let Some(src) = &args.project {
        let f = src.build()?;
        let rule = gauss_hermite_rule(args.quadrature)?;
        let s = project(|t| f(t), basis, args.order, &rule);
        let doc = json!({
            "basis": basis.to_string(),
            "coeffs": s.coeffs,
            "quadrature_order": args.quadrature,
            "parseval_residual": parseval_residual(|t| f(t), &s, &rule),
        });
        let name = format!(
            "projection_{}.json",
            if basis == Basis::H { "h" } else { "v" }
        );
        announce(&out.write(&name, &json_pretty(&doc))?);
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct ApplyKArgs {
    /// Function to convolve, e.g. `cos:2`, `erf`, `poly:1,0,-1`, `csv:phi.csv`.
    #[arg(long = "f")]
    pub f: Source,
    #[arg(long, default_value_t = 3.0)]
    pub halfwidth: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    #[arg(long, default_value_t = 96)]
    pub quadrature: usize,
}

pub fn apply_k(args: &ApplyKArgs, out: &Output) -> CliResult<()> {
    let f = args.f.build()?;
    let ts = uniform(args.halfwidth, args.step)?;
    let rule = gauss_hermite_rule(args.quadrature)?;
    let k = apply_k_grid(|t| f(t), &ts, &rule)?;
    announce(&out.write(
        "apply_k.csv",
        &csv(&["t", "value"], k.iter().map(|(t, v)| vec![t, v])),
    )?);
    Ok(())
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    /// Boundary data phi at x = 0.
    #[arg(long = "f")]
    pub f: Source,
    /// Values of x in [0, 1], comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 3.0)]
    pub halfwidth: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    #[arg(long, default_value_t = 96)]
    pub quadrature: usize,
    /// Points where phi is not smooth (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub breaks: Vec<f64>,
    /// Grading power used next to the break points.
    #[arg(long, default_value_t = 3)]
    pub grading: i32,
}

pub fn interp(args: &InterpArgs, out: &Output) -> CliResult<()> {
    if let Some(x) = args.x.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(CliError::Usage(format!("x must lie in [0, 1], got {x}")));
    }
    let f = args.f.build()?;
    let ts = uniform(args.halfwidth, args.step)?;
    let rule = gauss_hermite_rule(args.quadrature)?;
    let ip = Interpolant::new(move |t: f64| f(t), rule)
        .with_breakpoints(args.breaks.clone(), args.grading);
    let mut rows = Vec::new();
    for &x in &args.x {
        rows.extend(ip.slice(x, &ts)?.into_iter().map(|(x, t, u)| vec![x, t, u]));
    }
    announce(&out.write("interp.csv", &csv(&["x", "t", "u"], rows))?);
    Ok(())
}
