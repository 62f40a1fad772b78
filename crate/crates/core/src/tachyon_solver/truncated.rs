//! The quadratic coefficient system for p = 2 and its truncations.
//!
//! With phi = sum a_n H_n / (2^n n!), the Taylor coefficients of phi are
//! S_k = sum_m a_m c_{m,k} / 2^m, and K phi = sum a_n t^n / n!, so
//! K phi = phi^2 reads a_n = n! sum_{k+i=n} S_k S_i.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::basis::{coeff_c, Basis, HermiteSeries};
use crate::error::{Error, Result};
use crate::special::factorial;

use super::SolverConfig;

/// Forward-difference step of the Jacobian.
pub const JACOBIAN_STEP: f64 = 1e-7;

/// Equations n = 0..=N in the unknowns a_0..a_N, with a_{N+1} = ... = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSystem {
    order: usize,
    /// taylor[k][m] = c_{m,k} / 2^m.
    taylor: Vec<Vec<f64>>,
}

pub fn assemble_system(order: usize) -> Result<TruncatedSystem> {
    if order < 3 {
        return Err(Error::param("N", format!("need N >= 3, got {order}")));
    }
    let taylor = (0..=order)
        .map(|k| {
            (0..=order)
                .map(|m| coeff_c(m, k) / 2f64.powi(m as i32))
                .collect()
        })
        .collect();
    Ok(TruncatedSystem { order, taylor })
}

impl TruncatedSystem {
    pub fn order(&self) -> usize {
        self.order
    }

    fn check(&self, a: &[f64]) -> Result<()> {
        if a.len() != self.order + 1 {
            return Err(Error::param(
                "a",
                format!("need {} coefficients, got {}", self.order + 1, a.len()),
            ));
        }
        Ok(())
    }

    /// Taylor coefficients S_k of phi.
    pub fn taylor_coeffs(&self, a: &[f64]) -> Vec<f64> {
        self.taylor
            .iter()
            .map(|row| row.iter().zip(a).map(|(c, x)| c * x).sum())
            .collect()
    }

    /// n! [t^n] phi^2 for n = 0..=N.
    pub fn rhs(&self, a: &[f64]) -> Result<Vec<f64>> {
        self.check(a)?;
        let s = self.taylor_coeffs(a);
        Ok((0..=self.order)
            .map(|n| factorial(n) * (0..=n).map(|k| s[k] * s[n - k]).sum::<f64>())
            .collect())
    }

    pub fn residual(&self, a: &[f64]) -> Result<Vec<f64>> {
        Ok(a.iter().zip(self.rhs(a)?).map(|(x, r)| x - r).collect())
    }

    pub fn jacobian(&self, a: &[f64]) -> Result<DMatrix<f64>> {
        let r0 = self.residual(a)?;
        let n = a.len();
        let mut jac = DMatrix::zeros(n, n);
        let mut shifted = a.to_vec();
        for j in 0..n {
            let h = JACOBIAN_STEP * a[j].abs().max(1.0);
            shifted[j] = a[j] + h;
            let r = self.residual(&shifted)?;
            for i in 0..n {
                jac[(i, j)] = (r[i] - r0[i]) / h;
            }
            shifted[j] = a[j];
        }
        Ok(jac)
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOutcome {
    pub series: HermiteSeries,
    pub iterations: usize,
    /// Max-norm of the final residual.
    pub residual: f64,
    pub converged: bool,
}

/// Damped Newton iteration on the truncated system. A step is halved while it
/// would increase the residual.
pub fn newton_solve(
    sys: &TruncatedSystem,
    init: &[f64],
    cfg: &SolverConfig,
) -> Result<NewtonOutcome> {
    sys.check(init)?;
    let mut a = init.to_vec();
    let mut r = sys.residual(&a)?;
    let mut norm = max_abs(&r);
    let mut iterations = 0;
    while norm >= cfg.tol && iterations < cfg.max_iter {
        let jac = sys.jacobian(&a)?;
        let sv = jac.clone().svd(false, false).singular_values;
        let (smax, smin) = (sv.max(), sv.min());
        let condition = if smin == 0.0 {
            f64::INFINITY
        } else {
            smax / smin
        };
        if condition > 1e12 {
            return Err(Error::Singular {
                condition,
                iterate: a,
            });
        }
        let step = jac
            .lu()
            .solve(&(-DVector::from_vec(r.clone())))
            .ok_or(Error::Singular {
                condition,
                iterate: a.clone(),
            })?;
        let mut scale = cfg.damping;
        loop {
            let trial: Vec<f64> = a
                .iter()
                .zip(step.iter())
                .map(|(x, d)| x + scale * d)
                .collect();
            let rt = sys.residual(&trial)?;
            let nt = max_abs(&rt);
            if nt < norm || scale < 1e-6 {
                a = trial;
                r = rt;
                norm = nt;
                break;
            }
            scale *= 0.5;
        }
        iterations += 1;
    }
    Ok(NewtonOutcome {
        series: HermiteSeries::new(Basis::H, a)?,
        iterations,
        residual: norm,
        converged: norm < cfg.tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchLabel {
    Trivial,
    Parabolic,
    BranchC,
    ZeroHead,
}

/// A solution of the 3-approximation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxSolution3 {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    /// The sign with sqrt(a0) = eps (a0 - a2/4).
    pub eps_branch: i32,
    /// Determinant 1 + 10 a0 - 10 eps sqrt(a0) of the (a1, a3) subsystem.
    #[serde(rename = "D")]
    pub det: f64,
    pub label: BranchLabel,
}

impl ApproxSolution3 {
    fn new(a: [f64; 4], label: BranchLabel) -> Self {
        let eps_branch = if a[0] - a[2] / 4.0 < 0.0 { -1 } else { 1 };
        let det = 1.0 + 10.0 * a[0] - 10.0 * eps_branch as f64 * a[0].sqrt();
        ApproxSolution3 {
            a0: a[0],
            a1: a[1],
            a2: a[2],
            a3: a[3],
            eps_branch,
            det,
            label,
        }
    }

    pub fn coeffs(&self) -> [f64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    /// Residuals of the four 3-approximation equations when a0 > 0, or of
    /// the two a0 = 0 equations a3 = s sqrt(8 a2), a3 = s 3 sqrt2 a2^{3/2}.
    pub fn equation_residuals(&self) -> Vec<f64> {
        let [a0, a1, a2, a3] = self.coeffs();
        if a0 > 0.0 {
            let e = self.eps_branch as f64 * a0.sqrt();
            vec![
                a0 - (e + a2 / 4.0),
                a1 - 2.0 * e * (a1 - a3 / 4.0),
                a2 - (a1 * a1 / (2.0 * a0) + 2.0 * e * a2),
                a3 - (2.0 * e * a3 + 3.0 * a1 * a2 / e),
            ]
        } else {
            let s = if a3 < 0.0 { -1.0 } else { 1.0 };
            vec![
                a3 - s * (8.0 * a2).sqrt(),
                a3 - s * 3.0 * 2f64.sqrt() * a2.powf(1.5),
            ]
        }
    }
}

/// Every branch of the 3-approximation, in the order (a), (b), (c+), (c-),
/// (d) zero, (d+), (d-).
pub fn solve_3approx() -> Vec<ApproxSolution3> {
    use BranchLabel::*;
    let s = 0.5 + 0.15f64.sqrt();
    let a0 = s * s;
    let a2 = -0.4;
    let a1 = (2.0 * a0 * a2 * (1.0 - 2.0 * s)).sqrt();
    let a3 = 4.0 * a1 * (1.0 - 1.0 / (2.0 * s));
    let d3 = 4.0 / 3f64.sqrt();
    vec![
        ApproxSolution3::new([1.0, 0.0, 0.0, 0.0], Trivial),
        ApproxSolution3::new([0.25, 0.0, -1.0, 0.0], Parabolic),
        ApproxSolution3::new([a0, a1, a2, a3], BranchC),
        ApproxSolution3::new([a0, -a1, a2, -a3], BranchC),
        ApproxSolution3::new([0.0, 0.0, 0.0, 0.0], ZeroHead),
        ApproxSolution3::new([0.0, 0.0, 2.0 / 3.0, d3], ZeroHead),
        ApproxSolution3::new([0.0, 0.0, 2.0 / 3.0, -d3], ZeroHead),
    ]
}
