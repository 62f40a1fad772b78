//! Finite-interval quadrature: Gauss-Legendre panels and a tanh-sinh wrapper
//! that splits at known singular points.

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for i in 0..half {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, z);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Integral of f over [a, b] split into `panels` equal pieces.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let lo = a + k as f64 * h;
                let mid = lo + 0.5 * h;
                self.nodes
                    .iter()
                    .zip(&self.weights)
                    .map(|(&x, &w)| w * f(mid + 0.5 * h * x))
                    .sum::<f64>()
                    * 0.5
                    * h
            })
            .sum()
    }

    /// Integral over [a, b] of a function whose only singularity is an
    /// algebraic cusp at `a`. The substitution x = a + (b - a) s^power
    /// smooths |x - a|^(1/power) behaviour.
    pub fn integrate_graded<F: Fn(f64) -> f64>(
        &self,
        f: F,
        a: f64,
        b: f64,
        power: i32,
        pieces: usize,
    ) -> f64 {
        let d = b - a;
        let pw = power as f64;
        let step = 1.0 / pieces as f64;
        let mut total = 0.0;
        for k in 0..pieces {
            let lo = k as f64 * step;
            for (&x, &w) in self.nodes.iter().zip(&self.weights) {
                let s = lo + 0.5 * step * (1.0 + x);
                let jac = pw * s.powi(power - 1) * d.abs();
                total += 0.5 * step * w * jac * f(a + d * s.powi(power));
            }
        }
        total
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tanh-sinh integral of f over [a, b], split at `breaks` and into panels
/// no wider than `max_panel`. Endpoint singularities at the breaks are fine.
pub fn tanh_sinh<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    max_panel: f64,
    tol: f64,
) -> f64 {
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2)
        .map(|w| {
            let (lo, hi) = (w[0], w[1]);
            let pieces = ((hi - lo) / max_panel).ceil().max(1.0) as usize;
            let h = (hi - lo) / pieces as f64;
            (0..pieces)
                .map(|k| {
                    let x0 = lo + k as f64 * h;
                    let x1 = if k + 1 == pieces { hi } else { x0 + h };
                    quadrature::double_exponential::integrate(&f, x0, x1, tol).integral
                })
                .sum::<f64>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_exact_for_polynomials() {
        let gl = GaussLegendre::new(8);
        let s: f64 = gl.weights.iter().sum();
        assert_relative_eq!(s, 2.0, max_relative = 1e-14);
        let v = gl.integrate(|x| x.powi(14), 0.0, 1.0, 1);
        assert_relative_eq!(v, 1.0 / 15.0, max_relative = 1e-13);
    }

    #[test]
    fn graded_rule_handles_cube_root() {
        let gl = GaussLegendre::new(20);
        let v = gl.integrate_graded(|x| x.cbrt(), 0.0, 1.0, 3, 1);
        assert_relative_eq!(v, 0.75, max_relative = 1e-13);
        let v = gl.integrate_graded(|x| (-x).cbrt(), 0.0, -1.0, 3, 1);
        assert_relative_eq!(v, 0.75, max_relative = 1e-13);
    }

    #[test]
    fn tanh_sinh_with_breaks() {
        let v = tanh_sinh(|x: f64| x.abs().cbrt(), -1.0, 2.0, &[0.0], 1.0, 1e-13);
        assert_relative_eq!(v, 0.75 + 0.75 * 2f64.powf(4.0 / 3.0), max_relative = 1e-11);
    }
}
