//! Boundary-value representations: a step or erf profile plus a
//! Gaussian-damped Hermite correction, its Hermite coefficients, and the
//! local behaviour of odd solutions at their zero.

use serde::Serialize;

use crate::basis::hermite::h_monomials;
use crate::basis::{eval_h, QuadratureRule};
use crate::error::{Error, Result};
use crate::heatflow::slope;
use crate::quad::tanh_sinh;
use crate::special::{erf, factorial, gamma_half_odd};
use crate::tachyon_solver::solve_3approx;

/// e_n = (phi_0, H_n)_1 for phi_0 = 1/2 + erf/2.
pub fn erf_base_coeff(n: usize) -> f64 {
    if n == 0 {
        return 0.5;
    }
    if n % 2 == 0 {
        return 0.0;
    }
    let sign = if (n - 1) / 2 % 2 == 0 { 1.0 } else { -1.0 };
    sign * 2f64.powf(n as f64 / 2.0) * gamma_half_odd(n) / (2.0 * std::f64::consts::PI)
}

/// Leading profile of the ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseProfile {
    /// 1/2 + erf(t)/2, limits 0 and 1.
    HalfStep,
    /// erf(t), limits -1 and 1.
    Erf,
}

impl BaseProfile {
    pub fn eval(self, t: f64) -> f64 {
        match self {
            BaseProfile::HalfStep => 0.5 + 0.5 * erf(t),
            BaseProfile::Erf => erf(t),
        }
    }
}

/// phi(t) = base(t) + e^{-(alpha^2 - 1) t^2} sum_m c_m H_m(alpha t).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErfAnsatz {
    alpha: f64,
    c: Vec<f64>,
    base: BaseProfile,
}

impl ErfAnsatz {
    pub fn new(alpha: f64, c: Vec<f64>) -> Result<Self> {
        Self::with_base(alpha, c, BaseProfile::HalfStep)
    }

    pub fn with_base(alpha: f64, c: Vec<f64>, base: BaseProfile) -> Result<Self> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return Err(Error::Domain(format!(
                "ansatz needs alpha > 1, got {alpha}"
            )));
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::param("c", "coefficients must be finite"));
        }
        Ok(ErfAnsatz { alpha, c, base })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn base(&self) -> BaseProfile {
        self.base
    }

    pub fn correction(&self, t: f64) -> f64 {
        let a2 = self.alpha * self.alpha;
        let sum: f64 = self
            .c
            .iter()
            .enumerate()
            .map(|(m, c)| c * eval_h(m, self.alpha * t))
            .sum();
        (-(a2 - 1.0) * t * t).exp() * sum
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.base.eval(t) + self.correction(t)
    }

    /// Monomial coefficients (lowest first) of sum_m c_m H_m(alpha t).
    pub fn correction_monomials(&self) -> Vec<f64> {
        monomials_from_c(self.alpha, &self.c)
    }
}

/// Monomial coefficients of sum_m c_m H_m(alpha t).
pub fn monomials_from_c(alpha: f64, c: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; c.len()];
    for (m, cm) in c.iter().enumerate() {
        for (k, h) in h_monomials(m).iter().enumerate() {
            out[k] += cm * h * alpha.powi(k as i32);
        }
    }
    out
}

/// a_n = e_n + n! alpha^{-n-1} sum_{m = n mod 2} c_m 2^m (1 - alpha^2)^{(n-m)/2} / ((n-m)/2)!
/// for the half-step ansatz.
pub fn ansatz_to_hermite(az: &ErfAnsatz, n: usize) -> f64 {
    let base = match az.base {
        BaseProfile::HalfStep => erf_base_coeff(n),
        BaseProfile::Erf => 2.0 * erf_base_coeff(n) - if n == 0 { 1.0 } else { 0.0 },
    };
    base + correction_weight(az.alpha, n, &az.c)
}

fn correction_weight(alpha: f64, n: usize, c: &[f64]) -> f64 {
    let shrink = 1.0 - alpha * alpha;
    let sum: f64 = (n % 2..=n)
        .step_by(2)
        .take_while(|&m| m < c.len())
        .map(|m| {
            let half = (n - m) / 2;
            c[m] * 2f64.powi(m as i32) * shrink.powi(half as i32) / factorial(half)
        })
        .sum();
    factorial(n) * alpha.powi(-(n as i32) - 1) * sum
}

/// Solves the triangular relations a_n = ansatz_to_hermite(n), n < targets.len(),
/// for c_0..c_{len-1}.
pub fn solve_bvp(alpha: f64, targets: &[f64]) -> Result<Vec<f64>> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("need alpha > 1, got {alpha}")));
    }
    let mut c = vec![0.0; targets.len()];
    for n in 0..targets.len() {
        // everything except the c_n term
        let rest = correction_weight(alpha, n, &c[..n]);
        let diag = factorial(n) * alpha.powi(-(n as i32) - 1) * 2f64.powi(n as i32);
        c[n] = (targets[n] - erf_base_coeff(n) - rest) / diag;
    }
    Ok(c)
}

pub fn solve_bvp_3approx(alpha: f64, targets: [f64; 4]) -> Result<[f64; 4]> {
    let c = solve_bvp(alpha, &targets)?;
    Ok([c[0], c[1], c[2], c[3]])
}

/// Which of the two branch-(c) 3-approximations to use as targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Branch-(c) coefficients of the 3-approximation, with a1, a3 negated for
/// the minus branch.
pub fn default_targets(branch: Branch) -> [f64; 4] {
    let c = solve_3approx()
        .into_iter()
        .find(|s| s.label == crate::tachyon_solver::BranchLabel::BranchC && s.a1 > 0.0)
        .expect("branch c is always present");
    match branch {
        Branch::Plus => c.coeffs(),
        Branch::Minus => [c.a0, -c.a1, c.a2, -c.a3],
    }
}

/// phi(t) = erf(t) + e^{-(alpha^2-1)t^2} sum c_m H_m(alpha t), limits -1 and 1.
pub fn odd_p_ansatz(alpha: f64, c: Vec<f64>) -> Result<ErfAnsatz> {
    ErfAnsatz::with_base(alpha, c, BaseProfile::Erf)
}

/// Expands f e^{(alpha^2-1)t^2} in H_0..H_N and multiplies back by the
/// Gaussian, i.e. re-synthesizes f from the system e^{-(alpha^2-1)t^2} H_n(t).
pub fn chi_resynthesis<F: Fn(f64) -> f64>(
    f: F,
    alpha: f64,
    order: usize,
    rule: &QuadratureRule,
) -> impl Fn(f64) -> f64 {
    let shift = alpha * alpha - 1.0;
    let series = crate::basis::project(
        |t| f(t) * (shift * t * t).exp(),
        crate::basis::Basis::H,
        order,
        rule,
    );
    move |t: f64| (-shift * t * t).exp() * series.eval(t)
}

/// Behaviour of an odd solution at its zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalZero {
    /// (4/sqrt(pi)) int_0^inf phi(tau) e^{-tau^2} tau dtau.
    pub a1: f64,
    /// Log-log slope of |phi| on [1e-3, 1e-1].
    pub exponent: f64,
    /// 1/(2q+1).
    pub expected: f64,
}

impl LocalZero {
    pub fn exponent_error(&self) -> f64 {
        (self.exponent - self.expected).abs() / self.expected
    }
}

/// Fits phi(t) ~ (a1 t)^{1/(2q+1)} near t = 0 for an odd phi.
pub fn local_zero_analysis<F: Fn(f64) -> f64>(phi: F, q: u32) -> Result<LocalZero> {
    for k in 1..=50 {
        let t = 0.1 * k as f64;
        let gap = (phi(t) + phi(-t)).abs();
        if gap > 1e-3 {
            return Err(Error::Domain(format!(
                "phi is not odd: phi({t}) + phi(-{t}) = {gap:.3e}"
            )));
        }
    }
    let a1 = 4.0 / std::f64::consts::PI.sqrt()
        * tanh_sinh(
            |tau| phi(tau) * (-tau * tau).exp() * tau,
            0.0,
            12.0,
            &[],
            1.0,
            1e-13,
        );
    if !(a1 > 0.0) {
        return Err(Error::Domain(format!("a1 = {a1:.6e} is not positive")));
    }
    let pts: Vec<(f64, f64)> = (0..=40)
        .map(|k| 10f64.powf(-3.0 + 2.0 * k as f64 / 40.0))
        .map(|t| (t.ln(), phi(t).abs().ln()))
        .collect();
    Ok(LocalZero {
        a1,
        exponent: slope(&pts),
        expected: 1.0 / (2.0 * q as f64 + 1.0),
    })
}
