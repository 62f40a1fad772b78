use serde::Serialize;

use crate::basis::{eval_h, eval_v, GridFunction, QuadratureRule};
use crate::heatflow::Interpolant;
use crate::quad::tanh_sinh;

/// max over `ts` of |K phi(t) - phi(t)^p|, with K by the Gauss-Hermite rule.
pub fn residual<F: Fn(f64) -> f64>(phi: F, p: u32, rule: &QuadratureRule, ts: &[f64]) -> f64 {
    ts.iter()
        .map(|&t| (rule.mean(|v| phi(t - v)) - phi(t).powi(p as i32)).abs())
        .fold(0.0, f64::max)
}

/// As [`residual`], splitting the convolution at points where phi has cusps
/// or jumps.
pub fn residual_split<F: Fn(f64) -> f64 + Sync + Clone>(
    phi: F,
    p: u32,
    breaks: &[f64],
    rule: &QuadratureRule,
    ts: &[f64],
) -> f64 {
    let ip = Interpolant::new(phi.clone(), rule.clone()).with_breakpoints(breaks.to_vec(), 3);
    ts.iter()
        .map(|&t| {
            let k = ip.poisson_eval(1.0, t).unwrap_or(f64::NAN);
            (k - phi(t).powi(p as i32)).abs()
        })
        .fold(0.0, f64::max)
}

/// Window for the weighted integrals of the conservation laws; e^{-t^2/2}
/// times any polynomial of moderate degree is negligible beyond it.
const LAW_WINDOW: f64 = 14.0;

/// |(phi^p, H_n)_1 - (phi, V_n)_{1/2}| for n = 0..=n_max, by tanh-sinh
/// quadrature split at `breaks`.
pub fn conservation_laws_check<F: Fn(f64) -> f64>(
    phi: F,
    p: u32,
    n_max: usize,
    breaks: &[f64],
) -> Vec<f64> {
    let pi = std::f64::consts::PI;
    let (a, b) = (-LAW_WINDOW, LAW_WINDOW);
    (0..=n_max)
        .map(|n| {
            let left = tanh_sinh(
                |t| phi(t).powi(p as i32) * eval_h(n, t) * (-t * t).exp(),
                a,
                b,
                breaks,
                0.5,
                1e-14,
            ) / pi.sqrt();
            let right = tanh_sinh(
                |t| phi(t) * eval_v(n, t) * (-0.5 * t * t).exp(),
                a,
                b,
                breaks,
                0.5,
                1e-14,
            ) / (2.0 * pi).sqrt();
            (left - right).abs()
        })
        .collect()
}

/// First `count` moments int phi(tau) (tau - t0)^k e^{-(t0 - tau)^2} dtau / sqrt(pi).
/// They vanish for k < 2n when K phi has a zero of order 2n at t0.
pub fn zero_moments<F: Fn(f64) -> f64>(
    phi: F,
    t0: f64,
    count: usize,
    rule: &QuadratureRule,
) -> Vec<f64> {
    (0..count)
        .map(|k| rule.mean(|u| phi(t0 + u) * u.powi(k as i32)))
        .collect()
}

/// Behaviour of a grid function at one end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SideLimit {
    /// Mean of the values with |t| >= 8 on that side.
    pub mean: f64,
    /// Closest admissible limit value.
    pub nearest: f64,
    pub distance: f64,
    /// Centered difference of phi^p at t = +-8.
    pub power_slope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitReport {
    pub left: SideLimit,
    pub right: SideLimit,
    /// Both means within 1e-2 of the admissible set.
    pub admissible: bool,
}

const TAIL_START: f64 = 8.0;

/// Tail averages, nearest admissible limits ({0, 1} for even p, {0, +-1}
/// for odd p) and the slope of phi^p at the ends.
pub fn limit_diagnostics(phi: &GridFunction, p: u32) -> LimitReport {
    let allowed: &[f64] = if p % 2 == 0 {
        &[0.0, 1.0]
    } else {
        &[-1.0, 0.0, 1.0]
    };
    let nodes = phi.nodes();
    let (first, last) = (nodes[0], nodes[nodes.len() - 1]);
    // short grids fall back to their outer fifth
    let lo = if first < -TAIL_START {
        -TAIL_START
    } else {
        0.8 * first
    };
    let hi = if last > TAIL_START {
        TAIL_START
    } else {
        0.8 * last
    };
    let side = |select: &dyn Fn(f64) -> bool, at: f64| {
        let vals: Vec<f64> = phi
            .iter()
            .filter(|(t, _)| select(*t))
            .map(|(_, v)| v)
            .collect();
        let mean = vals.iter().sum::<f64>() / vals.len().max(1) as f64;
        let (nearest, distance) = allowed
            .iter()
            .map(|&a| (a, (mean - a).abs()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        let h = 1e-3;
        let pw = |t: f64| phi.interpolate(t).powi(p as i32);
        SideLimit {
            mean,
            nearest,
            distance,
            power_slope: (pw(at + h) - pw(at - h)) / (2.0 * h),
        }
    };
    let left = side(&|t| t <= lo, lo);
    let right = side(&|t| t >= hi, hi);
    LimitReport {
        left,
        right,
        admissible: left.distance < 1e-2 && right.distance < 1e-2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::gauss_hermite_rule;

    #[test]
    fn residual_examples() {
        let rule = gauss_hermite_rule(96).unwrap();
        let ts: Vec<f64> = (0..=20).map(|k| -0.5 + 0.05 * k as f64).collect();
        assert!(residual(|_| 1.0, 3, &rule, &ts) < 1e-15);
        let r = residual(|t| 0.5 * (1.0 - t * t), 2, &rule, &ts);
        assert!(r < 0.15);
        // K(1/2 (1 - t^2)) = 1/2 (1 - t^2) - 1/4
        let t = 0.3;
        let k = rule.mean(|v| 0.5 * (1.0 - (t - v) * (t - v)));
        assert!((k - (0.5 * (1.0 - t * t) - 0.25)).abs() < 1e-14);
    }

    #[test]
    fn laws_on_simple_functions() {
        let r = conservation_laws_check(|_| 1.0, 4, 6, &[]);
        assert!(r.iter().all(|x| *x < 1e-13), "{r:?}");
        let r = conservation_laws_check(|t| t, 1, 6, &[]);
        assert!(r.iter().all(|x| *x < 1e-13), "{r:?}");
    }

    #[test]
    fn moments_vanish_below_zero_order() {
        let rule = gauss_hermite_rule(64).unwrap();
        let m = zero_moments(|t| eval_h(4, t), 0.0, 5, &rule);
        assert!(m[..4].iter().all(|x| x.abs() < 1e-12));
        assert!(m[4].abs() > 1.0);
    }

    #[test]
    fn limits() {
        let g = GridFunction::from_fn(GridFunction::uniform_nodes(10.0, 0.05), |_| 1.0).unwrap();
        let r = limit_diagnostics(&g, 2);
        assert!(r.admissible && r.left.mean == 1.0 && r.right.power_slope.abs() < 1e-12);
        let g = GridFunction::from_fn(GridFunction::uniform_nodes(10.0, 0.05), |t| {
            0.5 * (1.0 - t * t)
        })
        .unwrap();
        assert!(!limit_diagnostics(&g, 2).admissible);
        let g = GridFunction::from_fn(GridFunction::uniform_nodes(10.0, 0.05), f64::tanh).unwrap();
        let r = limit_diagnostics(&g, 3);
        assert!(r.admissible && r.left.nearest == -1.0 && r.right.nearest == 1.0);
    }
}
