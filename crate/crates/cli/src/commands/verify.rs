//! `verify`: self-checks against closed forms and identities.

use clap::{Args, ValueEnum};
use serde::Serialize;
use tachyon_core::basis::weight::{inner_product, norm};
use tachyon_core::basis::{
    eval_h, eval_v, gauss_hermite_rule, parseval_residual, project, Basis, GridFunction,
    WeightParam,
};
use tachyon_core::gaussop::{apply_k_at, apply_k_grid, norm_bound};
use tachyon_core::special::erf;
use tachyon_core::tachyon_solver::{
    conservation_laws_check, fixed_point_iterate, residual, SolverConfig,
};

use super::announce;
use crate::error::{CliError, CliResult};
use crate::output::{json_pretty, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Eigen,
    Parseval,
    Adjoint,
    Exact,
    NormBound,
    Conservation,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run (comma separated); all by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub only: Vec<Suite>,
    /// Override the Gauss-Hermite order of every suite. Results are then
    /// informational and do not affect the exit status.
    #[arg(long)]
    pub quadrature: Option<usize>,
}

#[derive(Debug, Serialize)]
struct SuiteResult {
    suite: Suite,
    pass: bool,
    value: f64,
    tol: f64,
    quadrature: usize,
    detail: String,
}

#[derive(Debug, Serialize)]
struct Report {
    pass: bool,
    informational: bool,
    suites: Vec<SuiteResult>,
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn exact_solution(p: u32) -> impl Fn(f64) -> f64 + Copy {
    let pf = p as f64;
    move |t: f64| pf.powf(1.0 / (2.0 * (pf - 1.0))) * (t * t * (pf - 1.0) / pf).exp()
}

/// Returns (value, tol, detail).
fn run_suite(suite: Suite, m: usize) -> CliResult<(f64, f64, String)> {
    let rule = gauss_hermite_rule(m)?;
    Ok(match suite {
        Suite::Eigen => {
            let ts = linspace(-3.0, 3.0, 121);
            let mut worst = 0.0f64;
            for xi in [0.5, 1.0, 2.0] {
                let k = apply_k_grid(|t| (xi * t).cos(), &ts, &rule)?;
                let lambda = (-xi * xi / 4.0).exp();
                worst = k.iter().fold(worst, |w, (t, v)| {
                    w.max((v - lambda * (xi * t).cos()).abs())
                });
            }
            (
                worst,
                1e-8,
                "max |K cos(xi t) - e^{-xi^2/4} cos(xi t)|, xi in {0.5, 1, 2}, |t| <= 3".into(),
            )
        }
        Suite::Parseval => {
            let gauss = |t: f64| (-t * t).exp();
            let h1 = |t: f64| eval_h(1, t);
            let worst = [
                parseval_residual(h1, &project(h1, Basis::H, 30, &rule), &rule),
                parseval_residual(gauss, &project(gauss, Basis::H, 30, &rule), &rule),
                parseval_residual(f64::cos, &project(f64::cos, Basis::H, 30, &rule), &rule),
            ]
            .into_iter()
            .fold(0.0, f64::max);
            (
                worst,
                1e-8,
                "Parseval defect at order 30 for H_1, e^{-t^2}, cos".into(),
            )
        }
        Suite::Adjoint => {
            let mut worst = 0.0f64;
            let fs: [fn(f64) -> f64; 3] = [|t| (-t * t).exp(), f64::cos, |t| 1.0 + t - t * t * t];
            for f in fs {
                let kf = |t: f64| apply_k_at(&f, t, &rule).unwrap_or(f64::NAN);
                for n in 0..=8 {
                    let left = inner_product(kf, |t| eval_h(n, t), WeightParam::ONE, &rule);
                    let right = inner_product(f, |t| eval_v(n, t), WeightParam::HALF, &rule);
                    worst = worst.max((left - right).abs() / right.abs().max(1.0));
                }
            }
            (
                worst,
                1e-9,
                "(K f, H_n)_1 against (f, V_n)_1/2 for n <= 8".into(),
            )
        }
        Suite::Exact => {
            let ts = linspace(-2.0, 2.0, 81);
            let worst = [2, 3]
                .into_iter()
                .map(|p| residual(exact_solution(p), p, &rule, &ts))
                .fold(0.0, f64::max);
            (
                worst,
                1e-8,
                "|K phi - phi^p| for the Gaussian solutions, p = 2, 3, |t| <= 2".into(),
            )
        }
        Suite::NormBound => {
            let exact = norm_bound(0.5, 1.0)? == std::f64::consts::SQRT_2;
            let mut worst = f64::NEG_INFINITY;
            for k in 0..=6 {
                let family: [Box<dyn Fn(f64) -> f64>; 2] = [
                    Box::new(move |t: f64| (1.0 + t).powi(k)),
                    Box::new(move |t: f64| eval_h(k as usize, t)),
                ];
                for f in family {
                    let kf = |t: f64| apply_k_at(&f, t, &rule).unwrap_or(f64::NAN);
                    for alpha in [0.25, 0.5, 1.0, 1.5] {
                        for excess in [0.1, 1.0] {
                            let beta = 2.0 * alpha / (2.0 - alpha) + excess;
                            let lhs = norm(kf, WeightParam::new(beta)?, &rule);
                            let rhs = norm_bound(alpha, beta)?
                                * norm(&f, WeightParam::new(alpha)?, &rule);
                            worst = worst.max(lhs - rhs);
                        }
                    }
                }
            }
            let value = if exact { worst.max(0.0) } else { f64::INFINITY };
            (
                value,
                1e-9,
                format!("bound at (1/2, 1) is exactly sqrt 2: {exact}; max(|K f|_beta - bound |f|_alpha) = {worst:.3e}"),
            )
        }
        Suite::Conservation => {
            let cfg = SolverConfig {
                p: 3,
                quad_order: m,
                odd_symmetry: true,
                ..SolverConfig::default()
            };
            let phi0 = GridFunction::from_fn(cfg.grid(), erf)?;
            let out = fixed_point_iterate(&cfg, &phi0)?;
            let ip = &out.interpolant;
            let laws = conservation_laws_check(|t| ip.eval(t), 3, 8, &ip.zeros());
            let worst = laws.into_iter().fold(0.0, f64::max);
            let value = if out.converged() {
                worst
            } else {
                f64::INFINITY
            };
            (
                value,
                1e-6,
                "|(phi^3, H_n)_1 - (phi, V_n)_1/2|, n <= 8, odd p = 3 solution".into(),
            )
        }
    })
}

pub fn run(args: &VerifyArgs, out: &Output) -> CliResult<()> {
    let mut suites = if args.only.is_empty() {
        Suite::value_variants().to_vec()
    } else {
        args.only.clone()
    };
    suites.sort();
    suites.dedup();
    if let Some(m) = args.quadrature {
        if m == 0 {
            return Err(CliError::Usage("--quadrature must be positive".into()));
        }
    }
    let mut results = Vec::new();
    for suite in suites {
        let m = args
            .quadrature
            .unwrap_or(if suite == Suite::NormBound { 128 } else { 96 });
        let (value, tol, detail) = run_suite(suite, m)?;
        results.push(SuiteResult {
            suite,
            pass: value < tol,
            value,
            tol,
            quadrature: m,
            detail,
        });
    }
    let report = Report {
        pass: results.iter().all(|r| r.pass),
        informational: args.quadrature.is_some(),
        suites: results,
    };
    let text = json_pretty(&report);
    print!("{text}");
    announce(&out.write("verify.json", &text)?);
    if report.pass || report.informational {
        Ok(())
    } else {
        let failed: Vec<String> = report
            .suites
            .iter()
            .filter(|r| !r.pass)
            .map(|r| format!("{:?}", r.suite))
            .collect();
        Err(CliError::Numerical(format!(
            "failed: {}",
            failed.join(", ")
        )))
    }
}
