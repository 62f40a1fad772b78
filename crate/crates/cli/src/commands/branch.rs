//! `branch`: zeros of the even caloric polynomial of degree 2n at x = 1 - eps,
//! and how a generic odd perturbation moves them as eps shrinks.

use clap::Args;
use serde_json::json;
use tachyon_core::heatflow::{
    branching_roots, caloric_polynomial, heat_polynomial, slope, track_zeros,
};

use super::announce;
use crate::error::{CliError, CliResult};
use crate::output::{json_pretty, Output};

#[derive(Debug, Args)]
pub struct BranchArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Distance eps in (0, 0.5] below the branching time.
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
}

/// Rungs of the convergence-rate table.
const LADDER: [f64; 4] = [1e-2, 1e-3, 1e-4, 1e-5];

pub fn run(args: &BranchArgs, out: &Output) -> CliResult<()> {
    if !(1..=20).contains(&args.n) {
        return Err(CliError::Usage(format!(
            "--n must lie in 1..=20, got {}",
            args.n
        )));
    }
    if !(args.eps > 0.0 && args.eps <= 0.5) {
        return Err(CliError::Usage(format!(
            "--eps must lie in (0, 0.5], got {}",
            args.eps
        )));
    }
    let n = args.n;
    let track = track_zeros(|t| heat_polynomial(n, args.eps, t), n, args.eps)?;

    let mut rates = Vec::new();
    let mut pts = Vec::new();
    for eps in LADDER {
        // the degree 2n+1 term breaks the symmetry, so the roots drift
        let perturbed =
            |t| caloric_polynomial(2 * n, eps, t) + caloric_polynomial(2 * n + 1, eps, t);
        let t = track_zeros(perturbed, n, eps)?;
        let dev = t.max_deviation();
        if let Some(d) = dev.filter(|d| *d > 0.0) {
            pts.push((eps.ln(), d.ln()));
        }
        rates.push(json!({
            "eps": eps,
            "found": t.roots.len(),
            "max_deviation": dev,
            "scaled_deviation": dev.map(|d| d / eps.sqrt()),
        }));
    }
    let doc = json!({
        "n": n,
        "eps": args.eps,
        "lambda": branching_roots(n)?,
        "roots": track.roots,
        "predicted": track.predicted,
        "max_deviation": track.max_deviation(),
        "rates": rates,
        "rate_slope": (pts.len() >= 2).then(|| slope(&pts)),
    });
    let text = json_pretty(&doc);
    print!("{text}");
    announce(&out.write("branch.json", &text)?);
    if track.count_matches() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "found {} roots, expected {}",
            track.roots.len(),
            track.predicted.len()
        )))
    }
}
