//! `solve`: the grid fixed-point iteration, the 3-approximation table and
//! Newton on the truncated system.

use clap::Args;
use serde::Serialize;
use serde_json::json;
use tachyon_core::basis::{gauss_hermite_rule, GridFunction};
use tachyon_core::fmt::g15;
use tachyon_core::heatflow::Interpolant;
use tachyon_core::tachyon_solver::{
    assemble_system, conservation_laws_check, fixed_point_iterate, limit_diagnostics, newton_solve,
    residual_split, solve_3approx, BranchLabel, SignTemplate, SolverConfig,
};

use super::announce;
use crate::error::{CliError, CliResult};
use crate::output::{csv, json_lines, json_pretty, Output};
use crate::source::Source;

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Power p >= 2.
    #[arg(long)]
    pub p: u32,
    /// Solve the truncated 3-approximation instead (p = 2 only).
    #[arg(long)]
    pub approx: Option<usize>,
    /// Newton on the truncated system of order N, started from branch c (p = 2 only).
    #[arg(long)]
    pub order: Option<usize>,
    /// Initial guess, e.g. `erf`, `one`, `tanh`, `csv:phi.csv`.
    #[arg(long, default_value = "erf")]
    pub init: Source,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,
    /// Relaxation d in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    pub damping: f64,
    #[arg(long, default_value_t = 10.0)]
    pub halfwidth: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Gauss-Hermite order M.
    #[arg(long, default_value_t = 96)]
    pub quadrature: usize,
    /// Sign changes of phi for even p (comma separated); sgn(t) by default.
    #[arg(long, value_delimiter = ',')]
    pub breaks: Option<Vec<f64>>,
    /// Skip antisymmetrization for odd p even when the initial guess is odd.
    #[arg(long)]
    pub no_symmetry: bool,
}

impl SolveArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            p: self.p,
            order: self.order.unwrap_or(3),
            quad_order: self.quadrature,
            tol: self.tol,
            max_iter: self.max_iter,
            damping: self.damping,
            grid_halfwidth: self.halfwidth,
            grid_step: self.step,
            odd_symmetry: false,
            sign: self.breaks.clone().map(SignTemplate::from_breaks),
        }
    }
}

pub fn run(args: &SolveArgs, out: &Output) -> CliResult<()> {
    let cfg = args.config();
    cfg.validate()?;
    if (args.approx.is_some() || args.order.is_some()) && args.p != 2 {
        return Err(CliError::Usage("--approx and --order need --p 2".into()));
    }
    match (args.approx, args.order) {
        (Some(_), Some(_)) => Err(CliError::Usage("use either --approx or --order".into())),
        (Some(3), None) => approx3(out),
        (Some(n), None) => Err(CliError::Usage(format!(
            "only --approx 3 has a closed form, got {n}"
        ))),
        (None, Some(n)) => newton(&cfg, n, out),
        (None, None) => iterate(args, cfg, out),
    }
}

fn approx3(out: &Output) -> CliResult<()> {
    let branches = solve_3approx();
    println!(
        "{:<10} {:>12} {:>12} {:>12} {:>12} {:>4} {:>12}",
        "branch", "a0", "a1", "a2", "a3", "eps", "D"
    );
    for s in &branches {
        let label = serde_json::to_value(s.label)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned));
        println!(
            "{:<10} {:>12} {:>12} {:>12} {:>12} {:>4} {:>12}",
            label.unwrap_or_default(),
            format!("{:.6}", s.a0),
            format!("{:.6}", s.a1),
            format!("{:.6}", s.a2),
            format!("{:.6}", s.a3),
            s.eps_branch,
            format!("{:.3e}", s.det),
        );
    }
    announce(&out.write("approx3.json", &json_pretty(&branches))?);
    Ok(())
}

fn newton(cfg: &SolverConfig, order: usize, out: &Output) -> CliResult<()> {
    let sys = assemble_system(order)?;
    let start = solve_3approx()
        .into_iter()
        .find(|s| s.label == BranchLabel::BranchC && s.a1 > 0.0)
        .expect("branch c exists");
    let mut init = start.coeffs().to_vec();
    init.resize(order + 1, 0.0);
    let res = newton_solve(&sys, &init, cfg)?;
    let doc = json!({
        "order": order,
        "start": init,
        "coeffs": res.series.coeffs,
        "iterations": res.iterations,
        "residual": res.residual,
        "converged": res.converged,
    });
    announce(&out.write("newton.json", &json_pretty(&doc))?);
    if res.converged {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "Newton stopped after {} steps with residual {}",
            res.iterations,
            g15(res.residual)
        )))
    }
}

#[derive(Serialize)]
struct Verification {
    p: u32,
    converged: bool,
    termination: tachyon_core::tachyon_solver::Termination,
    iterations: usize,
    odd_symmetry: bool,
    zeros: Vec<f64>,
    /// Split-quadrature residual on the nodes at least 2 from the grid ends.
    residual: f64,
    residual_window: f64,
    conservation_laws: Vec<f64>,
    limits: tachyon_core::tachyon_solver::LimitReport,
}

fn iterate(args: &SolveArgs, mut cfg: SolverConfig, out: &Output) -> CliResult<()> {
    let init = args.init.build()?;
    let phi0 = GridFunction::from_fn(cfg.grid(), |t| init(t))?;
    let odd_data = phi0
        .iter()
        .all(|(t, v)| (v + init(-t)).abs() <= 1e-12 * v.abs().max(1.0));
    cfg.odd_symmetry = args.p % 2 == 1 && odd_data && !args.no_symmetry;

    let outcome = fixed_point_iterate(&cfg, &phi0)?;
    announce(&out.write("trace.jsonl", &json_lines(&outcome.trace))?);

    let ip = &outcome.interpolant;
    let phi = |t: f64| ip.eval(t);
    let zeros = ip.zeros();
    let rule = gauss_hermite_rule(cfg.quad_order)?;
    let k = Interpolant::new(phi, rule.clone()).with_breakpoints(zeros.clone(), args.p as i32);
    let nodes = outcome.solution.nodes();
    let kphi: Vec<f64> = nodes
        .iter()
        .map(|&t| k.poisson_eval(1.0, t))
        .collect::<Result<_, _>>()?;
    let rows = nodes.iter().zip(&kphi).map(|(&t, &kv)| {
        let v = phi(t);
        let vp = v.powi(args.p as i32);
        vec![t, v, kv, vp, kv - vp]
    });
    announce(&out.write(
        "solution.csv",
        &csv(&["t", "phi", "Kphi", "phi_p", "residual"], rows),
    )?);

    let window = (cfg.grid_halfwidth - 2.0).max(1.0);
    let inner: Vec<f64> = nodes
        .iter()
        .copied()
        .filter(|t| t.abs() <= window)
        .collect();
    let report = Verification {
        p: args.p,
        converged: outcome.converged(),
        termination: outcome.termination,
        iterations: outcome.trace.len(),
        odd_symmetry: cfg.odd_symmetry,
        residual: residual_split(phi, args.p, &zeros, &rule, &inner),
        residual_window: window,
        conservation_laws: conservation_laws_check(phi, args.p, 8, &zeros),
        limits: limit_diagnostics(&outcome.solution, args.p),
        zeros,
    };
    announce(&out.write("verify.json", &json_pretty(&report))?);
    println!("residual {}", g15(report.residual));

    if outcome.converged() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "fixed-point iteration did not converge: {:?} after {} steps",
            outcome.termination,
            outcome.trace.len()
        )))
    }
}
