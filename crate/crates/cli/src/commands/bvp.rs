//! `bvp`: the erf ansatz with Hermite data matched to the 3-approximation.

use clap::{Args, ValueEnum};
use serde_json::json;
use tachyon_core::basis::gauss_hermite_rule;
use tachyon_core::bvp::{
    ansatz_to_hermite, default_targets, odd_p_ansatz, solve_bvp_3approx, Branch, ErfAnsatz,
};
use tachyon_core::tachyon_solver::residual;

use super::announce;
use crate::error::{CliError, CliResult};
use crate::output::{csv, json_pretty, uniform, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
}

#[derive(Debug, Args)]
pub struct BvpArgs {
    /// Power p: 2, or odd p >= 3 with the erf base profile.
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// alpha^2 > 1 in the Gaussian damping e^{-(alpha^2 - 1) t^2}.
    #[arg(long, default_value_t = 1.1)]
    pub alpha_sq: f64,
    #[arg(long, value_enum, default_value = "both")]
    pub branch: BranchArg,
    /// Correction coefficients for odd p (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub c: Vec<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub out: Format,
    #[arg(long, default_value_t = 8.0)]
    pub halfwidth: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Gauss-Hermite order for the reported residual.
    #[arg(long, default_value_t = 96)]
    pub quadrature: usize,
}

/// Where the reported residual max |phi^p - K phi| is taken.
const RESIDUAL_WINDOW: f64 = 2.0;

pub fn run(args: &BvpArgs, out: &Output) -> CliResult<()> {
    if !(args.alpha_sq > 1.0 && args.alpha_sq.is_finite()) {
        return Err(CliError::Usage(format!(
            "--alpha-sq must exceed 1, got {}",
            args.alpha_sq
        )));
    }
    if args.p < 2 || (args.p > 2 && args.p % 2 == 0) {
        return Err(CliError::Usage(format!(
            "--p must be 2 or odd, got {}",
            args.p
        )));
    }
    let alpha = args.alpha_sq.sqrt();
    let ts = uniform(args.halfwidth, args.step)?;
    let rule = gauss_hermite_rule(args.quadrature)?;
    let window: Vec<f64> = ts
        .iter()
        .copied()
        .filter(|t| t.abs() <= RESIDUAL_WINDOW)
        .collect();

    let mut cases = Vec::new();
    if args.p == 2 {
        if !args.c.is_empty() {
            return Err(CliError::Usage(
                "--c applies to odd p; p = 2 solves for c".into(),
            ));
        }
        let branches = match args.branch {
            BranchArg::Plus => vec![Branch::Plus],
            BranchArg::Minus => vec![Branch::Minus],
            BranchArg::Both => vec![Branch::Plus, Branch::Minus],
        };
        for b in branches {
            let targets = default_targets(b);
            let c = solve_bvp_3approx(alpha, targets)?;
            let name = if b == Branch::Plus { "plus" } else { "minus" };
            cases.push((name, ErfAnsatz::new(alpha, c.to_vec())?, Some(targets)));
        }
    } else {
        cases.push(("odd", odd_p_ansatz(alpha, args.c.clone())?, None));
    }

    for (name, az, targets) in cases {
        let table = csv(&["t", "phi"], ts.iter().map(|&t| vec![t, az.eval(t)]));
        announce(&out.write(&format!("bvp_{name}.csv"), &table)?);
        let a: Vec<f64> = (0..4).map(|n| ansatz_to_hermite(&az, n)).collect();
        let doc = json!({
            "p": args.p,
            "alpha": alpha,
            "alpha_sq": args.alpha_sq,
            "branch": name,
            "c": az.coeffs(),
            "targets": targets,
            "a": a,
            "correction_monomials": az.correction_monomials(),
            "residual": residual(|t| az.eval(t), args.p, &rule, &window),
            "residual_window": RESIDUAL_WINDOW,
        });
        announce(&out.write(&format!("bvp_{name}.json"), &json_pretty(&doc))?);
    }
    Ok(())
}
