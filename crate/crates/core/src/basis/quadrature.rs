use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 512;

/// Gauss-Hermite rule for integrals against e^{-u^2}.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// sum w_i f(u_i), approximating the integral of f(u) e^{-u^2}.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&u, &w)| w * f(u))
            .sum()
    }

    /// Expectation under the unit Gaussian weight e^{-u^2}/sqrt(pi).
    pub fn mean<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.integrate(f) / std::f64::consts::PI.sqrt()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Orthonormal Hermite values p_{m-1}(z), p_m(z) for the weight e^{-z^2}.
fn orthonormal_pair(m: usize, z: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25);
    for j in 1..=m {
        let jf = j as f64;
        let next = z * (2.0 / jf).sqrt() * cur - ((jf - 1.0) / jf).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// Builds the M-point Gauss-Hermite rule.
///
/// Eigenvalues of the Jacobi matrix seed a Newton polish on the orthonormal
/// recurrence; weights come from the derivative formula, which keeps them
/// relatively accurate in the tails. For M above roughly 370 the outermost
/// weights underflow to zero.
pub fn gauss_hermite_rule(m: usize) -> Result<QuadratureRule> {
    if !(1..=MAX_ORDER).contains(&m) {
        return Err(Error::param(
            "M",
            format!("need 1 <= M <= {MAX_ORDER}, got {m}"),
        ));
    }
    let jacobi = DMatrix::from_fn(m, m, |i, j| {
        if i.abs_diff(j) == 1 {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let mut guesses: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    guesses.sort_by(f64::total_cmp);

    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let scale = (2.0 * m as f64).sqrt();
    for i in 0..m / 2 {
        let mut z = guesses[m - 1 - i].abs();
        for _ in 0..50 {
            let (pm1, pm) = orthonormal_pair(m, z);
            let dz = pm / (scale * pm1);
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        let (pm1, _) = orthonormal_pair(m, z);
        let dp = scale * pm1;
        let w = 2.0 / (dp * dp);
        nodes[i] = -z;
        nodes[m - 1 - i] = z;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        let (pm1, _) = orthonormal_pair(m, 0.0);
        let dp = scale * pm1;
        weights[m / 2] = 2.0 / (dp * dp);
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Order used when projecting onto N basis functions.
pub fn default_order(n: usize) -> usize {
    (2 * n + 8).max(64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn one_and_two_points() {
        let r = gauss_hermite_rule(1).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert_relative_eq!(r.weights[0], PI.sqrt(), max_relative = 1e-15);

        let r = gauss_hermite_rule(2).unwrap();
        let h = 0.5f64.sqrt();
        assert_relative_eq!(r.nodes[0], -h, max_relative = 1e-15);
        assert_relative_eq!(r.nodes[1], h, max_relative = 1e-15);
        for w in &r.weights {
            assert_relative_eq!(*w, PI.sqrt() / 2.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn second_moment_any_order() {
        for m in [1usize, 3, 10, 64, 96, 200] {
            let r = gauss_hermite_rule(m).unwrap();
            let s: f64 = r.integrate(|u| u * u);
            if m >= 2 {
                assert!((s - PI.sqrt() / 2.0).abs() < 1e-12, "M={m}: {s}");
            }
            let total: f64 = r.weights.iter().sum();
            assert!((total - PI.sqrt()).abs() < 1e-12, "M={m}");
        }
    }

    #[test]
    fn out_of_range() {
        assert!(gauss_hermite_rule(0).is_err());
        assert!(gauss_hermite_rule(513).is_err());
        assert!(gauss_hermite_rule(512).is_ok());
    }

    #[test]
    fn default_orders() {
        assert_eq!(default_order(10), 64);
        assert_eq!(default_order(40), 88);
    }
}
