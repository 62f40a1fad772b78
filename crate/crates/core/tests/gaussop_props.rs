mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use tachyon_core::basis::weight::norm;
use tachyon_core::basis::{
    eval_h, eval_v, gauss_hermite_rule, inner_product, project, Basis, WeightParam,
};
use tachyon_core::gaussop::{
    apply_k_at, apply_k_grid, apply_k_series, entire_bound, eval_poly_complex, k_polynomial,
    norm_bound,
};
use tachyon_core::quad::GaussLegendre;
use tachyon_core::special::erf;

use common::{config, eval_poly, linspace, polynomial};

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn grid_and_series_paths_agree(c in polynomial(10)) {
        let rule = gauss_hermite_rule(64).unwrap();
        let f = |t: f64| eval_poly(&c, t);
        let series = apply_k_series(&project(f, Basis::H, 10, &rule)).unwrap();
        let ts = linspace(-3.0, 3.0, 121);
        let grid = apply_k_grid(f, &ts, &rule).unwrap();
        for (t, v) in grid.iter() {
            prop_assert!((series.eval(t) - v).abs() < 1e-8, "t={t}: {} vs {v}", series.eval(t));
        }
    }

    #[test]
    fn cosines_are_eigenfunctions(xi in 0.0..4.0f64) {
        let rule = gauss_hermite_rule(96).unwrap();
        let f = |t: f64| (xi * t).cos();
        let lambda = (-xi * xi / 4.0).exp();
        let ts = linspace(-3.0, 3.0, 121);
        let k = apply_k_grid(f, &ts, &rule).unwrap();
        let worst = k.iter().map(|(t, v)| (v - lambda * f(t)).abs()).fold(0.0, f64::max);
        prop_assert!(worst < 1e-8, "xi={xi}: {worst}");
    }

    #[test]
    fn conservation_identity(c in polynomial(6), n in 0usize..=8) {
        let rule = gauss_hermite_rule(64).unwrap();
        let f = |t: f64| eval_poly(&c, t);
        let kf = |t: f64| apply_k_at(&f, t, &rule).unwrap();
        let left = inner_product(kf, |t| eval_h(n, t), WeightParam::ONE, &rule);
        let right = inner_product(f, |t| eval_v(n, t), WeightParam::HALF, &rule);
        prop_assert!((left - right).abs() <= 1e-8 * right.abs().max(1.0), "n={n}: {left} vs {right}");
    }

    #[test]
    fn entire_extension_bounded(
        c in polynomial(6),
        alpha in 0.2..1.8f64,
        re in -2.0..2.0f64,
        im in -2.0..2.0f64,
    ) {
        let rule = gauss_hermite_rule(96).unwrap();
        let nf = norm(|t| eval_poly(&c, t), WeightParam::new(alpha).unwrap(), &rule);
        let kz = eval_poly_complex(&k_polynomial(&c), Complex64::new(re, im)).norm();
        let bound = entire_bound(re, im, alpha, nf).unwrap();
        prop_assert!(kz <= bound * (1.0 + 1e-12), "{kz} > {bound}");
    }
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn norm_bound_holds(c in polynomial(8), alpha in 0.1..1.9f64, excess in 0.05..10.0f64) {
        let rule = gauss_hermite_rule(128).unwrap();
        let beta = 2.0 * alpha / (2.0 - alpha) + excess;
        let f = |t: f64| eval_poly(&c, t);
        let kf = |t: f64| apply_k_at(&f, t, &rule).unwrap();
        let lhs = norm(kf, WeightParam::new(beta).unwrap(), &rule);
        let rhs = norm_bound(alpha, beta).unwrap() * norm(f, WeightParam::new(alpha).unwrap(), &rule);
        prop_assert!(lhs <= rhs + 1e-9, "alpha={alpha} beta={beta}: {lhs} > {rhs}");
    }
}

/// f piecewise constant on cells of width h centred at the nodes.
struct Steps {
    centers: Vec<f64>,
    values: Vec<f64>,
    h: f64,
}

impl Steps {
    /// K f in closed form: each cell contributes (erf(t - a) - erf(t - b)) / 2.
    fn k(&self, t: f64) -> f64 {
        self.centers
            .iter()
            .zip(&self.values)
            .map(|(c, v)| 0.5 * v * (erf(t - c + 0.5 * self.h) - erf(t - c - 0.5 * self.h)))
            .sum()
    }

    fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v * self.h).sum()
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn positive_and_contractive(values in prop::collection::vec(-1.0..1.0f64, 4..24)) {
        let h = 0.25;
        let n = values.len();
        let centers: Vec<f64> = (0..n).map(|k| (k as f64 - 0.5 * (n - 1) as f64) * h).collect();
        let f = Steps { centers, values, h };
        let gl = GaussLegendre::new(8);
        let kf_f: f64 = f
            .centers
            .iter()
            .zip(&f.values)
            .map(|(c, v)| v * gl.integrate(|t| f.k(t), c - 0.5 * h, c + 0.5 * h, 1))
            .sum();
        let reach = 0.5 * n as f64 * h + 8.0;
        let kf_sq = gl.integrate(|t| f.k(t).powi(2), -reach, reach, 800);
        prop_assert!(kf_f >= -1e-10, "(Kf, f) = {kf_f}");
        prop_assert!(kf_sq.sqrt() <= f.norm_sq().sqrt() * (1.0 + 1e-10), "{kf_sq} vs {}", f.norm_sq());
    }
}
