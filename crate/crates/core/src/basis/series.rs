use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis::hermite::{eval_h, eval_v};
use crate::basis::quadrature::QuadratureRule;
use crate::basis::weight::{inner_product, norm_sq, WeightParam};
use crate::error::{Error, Result};
use crate::special::{factorial, h_norm_sq};

/// Which family a coefficient list refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// f = sum a_n H_n / (2^n n!), coefficients taken in L2 with alpha = 1.
    H,
    /// f = sum b_n V_n / n!, coefficients taken in L2 with alpha = 1/2.
    V,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::H => write!(f, "H"),
            Basis::V => write!(f, "V"),
        }
    }
}

impl Basis {
    pub fn weight(self) -> WeightParam {
        match self {
            Basis::H => WeightParam::ONE,
            Basis::V => WeightParam::HALF,
        }
    }

    /// Squared norm of the n-th basis polynomial in its own space.
    pub fn norm_sq(self, n: usize) -> f64 {
        match self {
            Basis::H => h_norm_sq(n),
            Basis::V => factorial(n),
        }
    }

    pub fn eval(self, n: usize, x: f64) -> f64 {
        match self {
            Basis::H => eval_h(n, x),
            Basis::V => eval_v(n, x),
        }
    }
}

/// Truncated Hermite expansion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermiteSeries {
    pub basis: Basis,
    pub coeffs: Vec<f64>,
    /// Gauss-Hermite order used to compute the coefficients, when projected.
    #[serde(skip)]
    pub quadrature_order: Option<usize>,
}

impl HermiteSeries {
    pub fn new(basis: Basis, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::param(
                "coeffs",
                "a series needs at least one coefficient",
            ));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::param(
                "coeffs",
                format!("coefficient {i} is not finite"),
            ));
        }
        Ok(HermiteSeries {
            basis,
            coeffs,
            quadrature_order: None,
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient n, zero past the stored order.
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    /// Evaluate the synthesized function. Uses the recurrence for the
    /// normalized polynomials H_n/(2^n n!) or V_n/n! so large orders stay finite.
    pub fn eval(&self, x: f64) -> f64 {
        let (mut prev, mut cur) = (0.0, 1.0);
        let mut sum = self.coeffs[0];
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let kf = k as f64;
            let next = match self.basis {
                Basis::H => (x * cur - 0.5 * prev) / kf,
                Basis::V => (x * cur - prev) / kf,
            };
            prev = cur;
            cur = next;
            sum += c * cur;
        }
        sum
    }

    /// The Parseval sum sum c_n^2 / norm_n.
    pub fn parseval_sum(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * c / self.basis.norm_sq(n))
            .sum()
    }
}

/// Coefficients (f, H_n)_1 or (f, V_n)_{1/2} for n = 0..=order.
pub fn project<F: Fn(f64) -> f64>(
    f: F,
    basis: Basis,
    order: usize,
    rule: &QuadratureRule,
) -> HermiteSeries {
    let w = basis.weight();
    let s = w.alpha().sqrt();
    // one pass over the nodes, all orders at once
    let mut coeffs = vec![0.0; order + 1];
    for (u, wt) in rule.pairs() {
        let t = u / s;
        let fv = f(t) * wt;
        let (mut prev, mut cur) = (0.0, 1.0);
        coeffs[0] += fv;
        for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
            let km = (k - 1) as f64;
            let next = match basis {
                Basis::H => 2.0 * t * cur - 2.0 * km * prev,
                Basis::V => t * cur - km * prev,
            };
            prev = cur;
            cur = next;
            *c += fv * cur;
        }
    }
    let root_pi = std::f64::consts::PI.sqrt();
    coeffs.iter_mut().for_each(|c| *c /= root_pi);
    HermiteSeries {
        basis,
        coeffs,
        quadrature_order: Some(rule.order()),
    }
}

/// Result of a basis conversion, with the size of the dropped tail.
#[derive(Debug, Clone, PartialEq)]
pub struct Conversion {
    pub series: HermiteSeries,
    /// Largest absolute contribution of stored coefficients beyond `m`.
    pub tail: f64,
}

pub fn default_conversion_order(n: usize) -> usize {
    n + 16
}

fn convert(s: &HermiteSeries, m: usize, alternating: bool, target: Basis) -> Conversion {
    let term = |n: usize, k: usize| {
        let half = (k - n) / 2;
        let sign = if alternating && half % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        sign * 2f64.powi(n as i32 - k as i32) / factorial(half) * s.coeff(k)
    };
    let top = s.order();
    let coeffs = (0..=m)
        .map(|n| (n..=top.min(m)).step_by(2).map(|k| term(n, k)).sum())
        .collect();
    let tail = (0..=m)
        .map(|n| {
            (n..=top)
                .step_by(2)
                .filter(|&k| k > m)
                .map(|k| term(n, k))
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max);
    Conversion {
        series: HermiteSeries {
            basis: target,
            coeffs,
            quadrature_order: None,
        },
        tail,
    }
}

/// b_n = sum_{m >= n, m = n mod 2} 2^{n-m} / ((m-n)/2)! a_m, truncated at `m`.
pub fn convert_a_to_b(s: &HermiteSeries, m: usize) -> Result<Conversion> {
    if s.basis != Basis::H {
        return Err(Error::BasisMismatch {
            expected: Basis::H,
            found: s.basis,
        });
    }
    Ok(convert(s, m, false, Basis::V))
}

/// a_n = sum (-1)^{(m-n)/2} 2^{n-m} / ((m-n)/2)! b_m, truncated at `m`.
pub fn convert_b_to_a(s: &HermiteSeries, m: usize) -> Result<Conversion> {
    if s.basis != Basis::V {
        return Err(Error::BasisMismatch {
            expected: Basis::V,
            found: s.basis,
        });
    }
    Ok(convert(s, m, true, Basis::H))
}

/// |‖f‖² − Σ coeff_n² / norm_n| in the series' own weighted space.
pub fn parseval_residual<F: Fn(f64) -> f64>(f: F, s: &HermiteSeries, rule: &QuadratureRule) -> f64 {
    (norm_sq(f, s.basis.weight(), rule) - s.parseval_sum()).abs()
}

/// (f, basis_n) for a single n, by the rule.
pub fn basis_coefficient<F: Fn(f64) -> f64>(
    f: F,
    basis: Basis,
    n: usize,
    rule: &QuadratureRule,
) -> f64 {
    inner_product(f, |t| basis.eval(n, t), basis.weight(), rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::quadrature::gauss_hermite_rule;
    use approx::assert_relative_eq;

    fn rule(m: usize) -> QuadratureRule {
        gauss_hermite_rule(m).unwrap()
    }

    #[test]
    fn project_h3_and_constant() {
        let r = rule(64);
        let s = project(|t| eval_h(3, t), Basis::H, 6, &r);
        for (n, c) in s.coeffs.iter().enumerate() {
            let expect = if n == 3 { 48.0 } else { 0.0 };
            assert!((c - expect).abs() < 1e-10, "n={n}: {c}");
        }
        assert_eq!(s.quadrature_order, Some(64));
        let s = project(|_| 1.0, Basis::H, 4, &r);
        assert!((s.coeffs[0] - 1.0).abs() < 1e-14);
        assert!(s.coeffs[1..].iter().all(|c| c.abs() < 1e-14));
    }

    #[test]
    fn project_exponential() {
        let r = rule(64);
        let s = project(f64::exp, Basis::H, 6, &r);
        for (n, c) in s.coeffs.iter().enumerate() {
            let expect = 0.25f64.exp();
            assert!((c - expect).abs() < 1e-8, "n={n}");
        }
    }

    #[test]
    fn series_eval_round_trip() {
        let r = rule(64);
        let f = |t: f64| 1.0 - 2.0 * t + 0.5 * t.powi(4);
        for basis in [Basis::H, Basis::V] {
            let s = project(f, basis, 8, &r);
            for &t in &[-1.5, 0.0, 0.4, 2.0] {
                assert!((s.eval(t) - f(t)).abs() < 1e-10, "{basis} t={t}");
            }
        }
    }

    #[test]
    fn conversion_examples() {
        let a = HermiteSeries::new(Basis::H, vec![1.0]).unwrap();
        let b = convert_a_to_b(&a, 4).unwrap();
        assert_eq!(b.series.coeffs, vec![1.0, 0.0, 0.0, 0.0, 0.0]);

        let h2 = HermiteSeries::new(Basis::H, vec![0.0, 0.0, 8.0]).unwrap();
        let b = convert_a_to_b(&h2, 18).unwrap().series;
        assert_relative_eq!(b.coeffs[0], 2.0);
        assert_relative_eq!(b.coeffs[2], 8.0);
        // cross-check against a direct V projection of H_2
        let direct = project(|t| eval_h(2, t), Basis::V, 4, &rule(64));
        for n in 0..=4 {
            assert!((direct.coeffs[n] - b.coeffs[n]).abs() < 1e-10);
        }

        let v2 = HermiteSeries::new(Basis::V, vec![0.0, 0.0, 2.0]).unwrap();
        let a = convert_b_to_a(&v2, 18).unwrap().series;
        assert_relative_eq!(a.coeffs[0], -0.5);
        assert_relative_eq!(a.coeffs[2], 2.0);
    }

    #[test]
    fn conversion_tail_reported() {
        let a = HermiteSeries::new(Basis::H, vec![0.0, 0.0, 0.0, 0.0, 16.0]).unwrap();
        let c = convert_a_to_b(&a, 2).unwrap();
        assert!(c.tail > 0.0);
        let c = convert_a_to_b(&a, 20).unwrap();
        assert_eq!(c.tail, 0.0);
    }

    #[test]
    fn basis_mismatch() {
        let v = HermiteSeries::new(Basis::V, vec![1.0]).unwrap();
        assert!(matches!(
            convert_a_to_b(&v, 3),
            Err(Error::BasisMismatch { .. })
        ));
    }

    #[test]
    fn parseval_examples() {
        let r = rule(96);
        let s = project(|t| eval_h(1, t), Basis::H, 30, &r);
        assert!(parseval_residual(|t| eval_h(1, t), &s, &r) < 1e-10);

        let g = |t: f64| (-t * t).exp();
        let s = project(g, Basis::H, 30, &r);
        assert!((norm_sq(g, WeightParam::ONE, &r) - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!(parseval_residual(g, &s, &r) < 1e-8);

        let s = project(f64::cos, Basis::H, 30, &r);
        assert!(
            (norm_sq(f64::cos, WeightParam::ONE, &r) - (1.0 + (-1f64).exp()) / 2.0).abs() < 1e-12
        );
        assert!(parseval_residual(f64::cos, &s, &r) < 1e-8);
    }

    #[test]
    fn rejects_nonfinite() {
        assert!(HermiteSeries::new(Basis::H, vec![1.0, f64::NAN]).is_err());
        assert!(HermiteSeries::new(Basis::H, vec![]).is_err());
    }
}
