//! The Gaussian convolution operator K, its bounds, its exact action on
//! Hermite data, and the linear equation K phi = phi.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{Basis, GridFunction, HermiteSeries, QuadratureRule};
use crate::error::{Error, Result};
use crate::special::{double_factorial_odd, factorial};

/// (K f)(t) = (1/sqrt pi) sum w_i f(t - u_i).
pub fn apply_k_at<F: Fn(f64) -> f64>(f: &F, t: f64, rule: &QuadratureRule) -> Result<f64> {
    let mut acc = 0.0;
    for (u, w) in rule.pairs() {
        let v = f(t - u);
        if !v.is_finite() {
            return Err(Error::NonFinite { node: t - u });
        }
        acc += w * v;
    }
    Ok(acc / std::f64::consts::PI.sqrt())
}

/// K f sampled on `ts`. Each node is independent, so the parallel map gives
/// the same bits for any thread count.
pub fn apply_k_grid<F>(f: F, ts: &[f64], rule: &QuadratureRule) -> Result<GridFunction>
where
    F: Fn(f64) -> f64 + Sync,
{
    let values = ts
        .par_iter()
        .map(|&t| apply_k_at(&f, t, rule))
        .collect::<Result<Vec<_>>>()?;
    GridFunction::new(ts.to_vec(), values)
}

/// A(t) = sum a_n t^n / n!.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorSeries {
    #[serde(rename = "taylor")]
    pub coeffs: Vec<f64>,
}

impl TaylorSeries {
    pub fn eval(&self, t: f64) -> f64 {
        // Horner on a_n / n!
        let n = self.coeffs.len();
        let mut acc = 0.0;
        for k in (0..n).rev() {
            acc = acc * t / (k as f64 + 1.0) + self.coeffs[k];
        }
        acc
    }

    /// Plain monomial coefficients a_n / n!.
    pub fn monomials(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| a / factorial(n))
            .collect()
    }
}

/// Taylor data of K f from the Hermite coefficients of f: they coincide.
pub fn apply_k_series(s: &HermiteSeries) -> Result<TaylorSeries> {
    if s.basis != Basis::H {
        return Err(Error::BasisMismatch {
            expected: Basis::H,
            found: s.basis,
        });
    }
    Ok(TaylorSeries {
        coeffs: s.coeffs.clone(),
    })
}

/// K* H_n = V_n, returned as the V-series with the single coefficient n! at n.
pub fn k_adjoint_on_h(n: usize) -> HermiteSeries {
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = factorial(n);
    HermiteSeries {
        basis: Basis::V,
        coeffs,
        quadrature_order: None,
    }
}

/// Monomial coefficients of K p for a polynomial p (lowest degree first).
/// Uses E[(t - u)^n] with u Gaussian of variance 1/2.
pub fn k_polynomial(monomials: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; monomials.len()];
    for (n, &c) in monomials.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        for j in 0..=n / 2 {
            let moment = double_factorial_odd(j) / 2f64.powi(j as i32);
            let binom = factorial(n) / (factorial(2 * j) * factorial(n - 2 * j));
            out[n - 2 * j] += c * binom * moment;
        }
    }
    out
}

/// Complex evaluation of a polynomial given by monomial coefficients.
pub fn eval_poly_complex(monomials: &[f64], z: Complex64) -> Complex64 {
    monomials
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// (2 alpha - 2 alpha^2/beta - alpha^2)^{-1/4}; beta may be +inf.
pub fn norm_bound(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::Domain(format!("need 0 < alpha < 2, got {alpha}")));
    }
    let floor = 2.0 * alpha / (2.0 - alpha);
    if !(beta > floor) {
        return Err(Error::Domain(format!("need beta > {floor}, got {beta}")));
    }
    let inv_beta = if beta.is_infinite() { 0.0 } else { 1.0 / beta };
    Ok((2.0 * alpha - 2.0 * alpha * alpha * inv_beta - alpha * alpha).powf(-0.25))
}

/// ‖f‖_alpha (2 - alpha)^{-1/4} exp(y^2 + alpha t^2 / (2 - alpha)) at z = t + iy.
pub fn entire_bound(z_re: f64, z_im: f64, alpha: f64, norm_f: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::Domain(format!("need 0 < alpha < 2, got {alpha}")));
    }
    Ok(norm_f
        * (2.0 - alpha).powf(-0.25)
        * (z_im * z_im + alpha / (2.0 - alpha) * z_re * z_re).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenKind {
    Cos,
    Sin,
    Const,
    Linear,
}

/// An eigenfunction of K with eigenvalue e^{-xi^2/4}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenfunctionSpec {
    xi: f64,
    kind: EigenKind,
}

impl EigenfunctionSpec {
    pub fn new(xi: f64, kind: EigenKind) -> Result<Self> {
        if !(xi >= 0.0 && xi.is_finite()) {
            return Err(Error::param("xi", format!("need xi >= 0, got {xi}")));
        }
        let zero_kind = matches!(kind, EigenKind::Const | EigenKind::Linear);
        if zero_kind != (xi == 0.0) {
            return Err(Error::param(
                "kind",
                format!("{kind:?} is incompatible with xi = {xi}"),
            ));
        }
        Ok(EigenfunctionSpec { xi, kind })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn eigenvalue(&self) -> f64 {
        (-self.xi * self.xi / 4.0).exp()
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self.kind {
            EigenKind::Cos => (self.xi * t).cos(),
            EigenKind::Sin => (self.xi * t).sin(),
            EigenKind::Const => 1.0,
            EigenKind::Linear => t,
        }
    }
}

/// phi_k(t) = e^{s c t} cos(c t), c = 2 sqrt(k pi), and its heat-flow
/// counterpart u_k(x, t) = e^{s c t} cos(c t + s 2 k pi x), 1-periodic in x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicSolution {
    pub k: u32,
    pub sign: f64,
}

impl PeriodicSolution {
    pub fn new(k: u32, sign: i32) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::param(
                "sign",
                format!("must be +1 or -1, got {sign}"),
            ));
        }
        Ok(PeriodicSolution {
            k,
            sign: sign as f64,
        })
    }

    fn c(&self) -> f64 {
        2.0 * (self.k as f64 * std::f64::consts::PI).sqrt()
    }

    pub fn phi(&self, t: f64) -> f64 {
        let c = self.c();
        (self.sign * c * t).exp() * (c * t).cos()
    }

    pub fn u(&self, x: f64, t: f64) -> f64 {
        let c = self.c();
        let k = self.k as f64;
        (self.sign * c * t).exp() * (c * t + self.sign * 2.0 * k * std::f64::consts::PI * x).cos()
    }

    /// (phi, H_n)_1 = Re[lambda^n e^{lambda^2/4}] with lambda = c(s + i).
    /// For k >= 1 the exponential factor is 1.
    pub fn hermite_coeff(&self, n: usize) -> f64 {
        let lambda = Complex64::new(self.sign * self.c(), self.c());
        let g = (lambda * lambda / 4.0).exp();
        (lambda.powu(n as u32) * g).re
    }
}

/// One residual of a linear relation between Hermite coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationResidual {
    /// Block index k for the split relations, equation index n for the parents.
    pub index: usize,
    pub value: f64,
    /// Sum of absolute values of the terms.
    pub scale: f64,
    pub terms: usize,
    /// |last included term| / scale; small when truncation is negligible.
    pub tail_ratio: f64,
}

impl RelationResidual {
    /// |sum| / sum |terms|, zero when every term vanishes.
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.value.abs() / self.scale
        }
    }

    pub fn resolved(&self, tol: f64) -> bool {
        self.tail_ratio < tol
    }
}

/// Residuals of the block relations with residue `kappa` and their parents.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockResiduals {
    pub kappa: usize,
    /// Sums weighted by 1/(2^{4l}(2l+1)!).
    pub odd_factorial: Vec<RelationResidual>,
    /// Sums weighted by 1/(2^{4l}(2l+2)!).
    pub even_factorial: Vec<RelationResidual>,
    /// Parent relations with the alternating sign, for n = kappa mod 2.
    pub alternating: Vec<RelationResidual>,
    /// Parent relations without sign, for n = kappa mod 2.
    pub plain: Vec<RelationResidual>,
}

fn relation<I: Iterator<Item = f64>>(index: usize, terms: I) -> RelationResidual {
    let (mut value, mut scale, mut count, mut last) = (0.0, 0.0, 0, 0.0);
    for t in terms {
        value += t;
        scale += t.abs();
        count += 1;
        last = t.abs();
    }
    RelationResidual {
        index,
        value,
        scale,
        terms: count,
        tail_ratio: if scale == 0.0 { 0.0 } else { last / scale },
    }
}

/// Linear-case relations among Hermite coefficients of a solution of K phi = phi.
/// Every stored coefficient is used; the relative residual is the useful
/// measure because the coefficients of the periodic solutions grow.
pub fn linear_block_residual(s: &HermiteSeries, kappa: usize) -> Result<BlockResiduals> {
    if s.basis != Basis::H {
        return Err(Error::BasisMismatch {
            expected: Basis::H,
            found: s.basis,
        });
    }
    if kappa > 3 {
        return Err(Error::param("kappa", format!("must be 0..=3, got {kappa}")));
    }
    let top = s.order();
    let block = |k: usize, shift: usize| {
        let first = 2 + 4 * k + kappa;
        relation(
            k,
            (0..)
                .map(|l| (l, first + 4 * l))
                .take_while(|&(_, m)| m <= top)
                .map(|(l, m)| s.coeff(m) / (16f64.powi(l as i32) * factorial(2 * l + shift))),
        )
    };
    let blocks: Vec<usize> = (0..).take_while(|k| 2 + 4 * k + kappa <= top).collect();
    let odd_factorial = blocks.iter().map(|&k| block(k, 1)).collect();
    let even_factorial = blocks.iter().map(|&k| block(k, 2)).collect();

    let parent = |n: usize, alternating: bool| {
        relation(
            n,
            (n + 2..=top).step_by(2).map(|m| {
                let half = (m - n) / 2;
                let sign = if alternating && half % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
                sign * 2f64.powi(n as i32 - m as i32) / factorial(half) * s.coeff(m)
            }),
        )
    };
    let ns: Vec<usize> = (kappa % 2..top.saturating_sub(1)).step_by(2).collect();
    Ok(BlockResiduals {
        kappa,
        odd_factorial,
        even_factorial,
        alternating: ns.iter().map(|&n| parent(n, true)).collect(),
        plain: ns.iter().map(|&n| parent(n, false)).collect(),
    })
}
