//! Grid fixed-point iteration phi <- root_p(K phi) for general p.
//!
//! The iterate is carried as A = phi^p on a uniform grid. A is smooth even
//! where phi has a p-th root cusp, so it is the quantity that gets
//! interpolated; phi is recovered as a signed root. The convolution uses a
//! discretized measure with Gauss-Legendre points per cell, and cells
//! containing a zero of A (or a declared sign break) are split there with a
//! cubic grading that removes the cusp.

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{GridFunction, QuadratureRule};
use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use crate::special::erfc;

use super::SolverConfig;

/// Sign pattern for even p: the sign is (-1)^(number of breaks above t), so
/// one break T gives sgn(t - T) and two give (+, -, +).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SignTemplate {
    breaks: Vec<f64>,
}

impl SignTemplate {
    pub fn positive() -> Self {
        SignTemplate { breaks: Vec::new() }
    }

    pub fn from_breaks(mut breaks: Vec<f64>) -> Self {
        breaks.sort_by(f64::total_cmp);
        SignTemplate { breaks }
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn sign(&self, t: f64) -> f64 {
        let above = self.breaks.iter().filter(|&&b| b > t).count();
        if above % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// phi recovered from a gridded A = phi^p: sgn(A)|A|^{1/p} for odd p,
/// s(t) A^{1/p} for even p.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerInterpolant {
    power: GridFunction,
    p: u32,
    template: SignTemplate,
}

impl PowerInterpolant {
    pub fn new(power: GridFunction, p: u32, template: SignTemplate) -> Self {
        PowerInterpolant { power, p, template }
    }

    pub fn power_grid(&self) -> &GridFunction {
        &self.power
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn root(&self, a: f64, t: f64) -> f64 {
        signed_root(a, t, self.p, &self.template)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.root(self.power.interpolate(t), t)
    }

    /// Points where phi changes sign: zeros of A for odd p, template breaks
    /// inside the grid for even p.
    pub fn zeros(&self) -> Vec<f64> {
        if self.p % 2 == 0 {
            let (lo, hi) = (self.power.nodes()[0], *self.power.nodes().last().unwrap());
            return self
                .template
                .breaks()
                .iter()
                .copied()
                .filter(|b| *b > lo && *b < hi)
                .collect();
        }
        let nodes = self.power.nodes();
        let vals = self.power.values();
        let mut out = Vec::new();
        for j in 0..nodes.len() - 1 {
            if vals[j] == 0.0 {
                out.push(nodes[j]);
            } else if vals[j + 1] != 0.0 && vals[j].signum() != vals[j + 1].signum() {
                out.push(bisect_interp(&self.power, nodes[j], nodes[j + 1]));
            }
        }
        if *vals.last().unwrap() == 0.0 {
            out.push(*nodes.last().unwrap());
        }
        out
    }
}

fn signed_root(a: f64, t: f64, p: u32, template: &SignTemplate) -> f64 {
    let pf = p as f64;
    if p % 2 == 1 {
        a.signum() * a.abs().powf(1.0 / pf)
    } else {
        template.sign(t) * a.max(0.0).powf(1.0 / pf)
    }
}

fn bisect_interp(g: &GridFunction, mut lo: f64, mut hi: f64) -> f64 {
    let flo = g.interpolate(lo);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let fm = g.interpolate(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Nodes and weights of int_{-L}^{L} g(tau) dtau adapted to phi.
struct Measure {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

const CELL_POINTS: usize = 8;

fn build_measure(grid: &[f64], splits: &[f64], gl: &GaussLegendre) -> Measure {
    let mut nodes = Vec::with_capacity(grid.len() * CELL_POINTS + 4 * splits.len() * CELL_POINTS);
    let mut weights = Vec::with_capacity(nodes.capacity());
    let plain = |a: f64, b: f64, nodes: &mut Vec<f64>, weights: &mut Vec<f64>| {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for (&z, &w) in gl.nodes.iter().zip(&gl.weights) {
            nodes.push(mid + half * z);
            weights.push(half * w);
        }
    };
    // tau = z + d s^3 on s in [0, 1]
    let graded = |z: f64, end: f64, nodes: &mut Vec<f64>, weights: &mut Vec<f64>| {
        let d = end - z;
        for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
            let s = 0.5 + 0.5 * x;
            nodes.push(z + d * s * s * s);
            weights.push(0.5 * w * 3.0 * d.abs() * s * s);
        }
    };
    for cell in grid.windows(2) {
        let (a, b) = (cell[0], cell[1]);
        let inside: Vec<f64> = splits.iter().copied().filter(|&z| z > a && z < b).collect();
        match inside.as_slice() {
            [] => {
                let touching = splits.iter().find(|&&z| z == a || z == b);
                match touching {
                    Some(&z) if z == a => graded(a, b, &mut nodes, &mut weights),
                    Some(&z) => graded(z, a, &mut nodes, &mut weights),
                    None => plain(a, b, &mut nodes, &mut weights),
                }
            }
            zs => {
                let mut left = a;
                for (i, &z) in zs.iter().enumerate() {
                    if i == 0 {
                        graded(z, left, &mut nodes, &mut weights);
                    } else {
                        let mid = 0.5 * (left + z);
                        graded(left, mid, &mut nodes, &mut weights);
                        graded(z, mid, &mut nodes, &mut weights);
                    }
                    left = z;
                }
                graded(left, b, &mut nodes, &mut weights);
            }
        }
    }
    Measure { nodes, weights }
}

/// K phi at the targets for phi given by its values at the measure nodes and
/// constant tails phi(+-L) beyond the grid.
fn convolve(m: &Measure, phi_at: &[f64], tails: (f64, f64), lim: f64, targets: &[f64]) -> Vec<f64> {
    let inv_root_pi = 1.0 / std::f64::consts::PI.sqrt();
    targets
        .par_iter()
        .map(|&t| {
            let body: f64 = m
                .nodes
                .iter()
                .zip(&m.weights)
                .zip(phi_at)
                .map(|((&tau, &w), &f)| {
                    let d = t - tau;
                    w * f * (-d * d).exp()
                })
                .sum();
            body * inv_root_pi + 0.5 * tails.0 * erfc(lim + t) + 0.5 * tails.1 * erfc(lim - t)
        })
        .collect()
}

/// One line of the convergence trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEntry {
    pub iteration: usize,
    /// max |K phi - phi^p| on the grid before the update.
    pub residual: f64,
    /// max |phi_{k+1} - phi_k|.
    pub change: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    MaxIterations,
    Diverging,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointOutcome {
    pub solution: GridFunction,
    pub interpolant: PowerInterpolant,
    pub trace: Vec<TraceEntry>,
    pub termination: Termination,
}

impl FixedPointOutcome {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }
}

/// Number of consecutive increases of the change that counts as divergence.
pub const GROWTH_LIMIT: usize = 20;

/// Iterates phi_{k+1} = (1 - d) phi_k + d root_p(K phi_k) on the nodes of
/// `phi0` until the max change drops below `cfg.tol`.
pub fn fixed_point_iterate(cfg: &SolverConfig, phi0: &GridFunction) -> Result<FixedPointOutcome> {
    cfg.validate()?;
    let p = cfg.p;
    let grid = phi0.nodes().to_vec();
    let n = grid.len();
    if n < 6 {
        return Err(Error::Grid(format!("need at least 6 nodes, got {n}")));
    }
    if cfg.odd_symmetry && (0..n).any(|i| (grid[i] + grid[n - 1 - i]).abs() > 1e-12) {
        return Err(Error::Grid(
            "odd symmetrization needs nodes symmetric about 0".into(),
        ));
    }
    let template = if p % 2 == 0 {
        cfg.sign
            .clone()
            .unwrap_or_else(|| SignTemplate::from_breaks(vec![0.0]))
    } else {
        SignTemplate::positive()
    };
    let lim_lo = grid[0];
    let lim_hi = grid[n - 1];
    let lim = lim_hi.min(-lim_lo);
    let gl = GaussLegendre::new(CELL_POINTS);

    let mut phi = phi0.values().to_vec();
    let mut trace = Vec::new();
    let mut termination = Termination::MaxIterations;
    let mut growth = 0;
    let mut last_change = f64::INFINITY;

    for iteration in 1..=cfg.max_iter {
        let power =
            GridFunction::new(grid.clone(), phi.iter().map(|v| v.powi(p as i32)).collect())?;
        let current = PowerInterpolant::new(power, p, template.clone());
        let measure = build_measure(&grid, &current.zeros(), &gl);
        let phi_at: Vec<f64> = measure.nodes.iter().map(|&tau| current.eval(tau)).collect();
        let mut kphi = convolve(&measure, &phi_at, (phi[0], phi[n - 1]), lim, &grid);
        if let Some(i) = kphi.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { node: grid[i] });
        }
        if cfg.odd_symmetry {
            kphi = (0..n).map(|i| 0.5 * (kphi[i] - kphi[n - 1 - i])).collect();
        }
        if p % 2 == 0 {
            if let Some((i, &v)) = kphi.iter().enumerate().find(|(_, &v)| v < -cfg.tol) {
                return Err(Error::Infeasible {
                    t: grid[i],
                    value: v,
                });
            }
        }
        let residual = kphi
            .iter()
            .zip(&phi)
            .map(|(k, f)| (k - f.powi(p as i32)).abs())
            .fold(0.0, f64::max);
        let mut change = 0.0f64;
        for i in 0..n {
            let target = signed_root(kphi[i], grid[i], p, &template);
            let next = (1.0 - cfg.damping) * phi[i] + cfg.damping * target;
            change = change.max((next - phi[i]).abs());
            phi[i] = next;
        }
        trace.push(TraceEntry {
            iteration,
            residual,
            change,
        });
        if change < cfg.tol {
            termination = Termination::Converged;
            break;
        }
        growth = if change > last_change { growth + 1 } else { 0 };
        last_change = change;
        if growth >= GROWTH_LIMIT {
            termination = Termination::Diverging;
            break;
        }
    }

    let power = GridFunction::new(grid.clone(), phi.iter().map(|v| v.powi(p as i32)).collect())?;
    Ok(FixedPointOutcome {
        solution: GridFunction::new(grid, phi)?,
        interpolant: PowerInterpolant::new(power, p, template),
        trace,
        termination,
    })
}

/// root_p(K phi) at the given points, with K by the Gauss-Hermite rule.
pub fn iteration_map<F: Fn(f64) -> f64>(
    phi: F,
    p: u32,
    template: &SignTemplate,
    ts: &[f64],
    rule: &QuadratureRule,
) -> Vec<f64> {
    ts.iter()
        .map(|&t| signed_root(rule.mean(|v| phi(t - v)), t, p, template))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::gauss_hermite_rule;
    use crate::special::erf;

    fn grid(halfwidth: f64) -> Vec<f64> {
        GridFunction::uniform_nodes(halfwidth, 0.05)
    }

    #[test]
    fn templates() {
        let s = SignTemplate::from_breaks(vec![0.0]);
        assert_eq!((s.sign(-1.0), s.sign(1.0)), (-1.0, 1.0));
        let s = SignTemplate::from_breaks(vec![2.0, -1.0]);
        assert_eq!((s.sign(-3.0), s.sign(0.0), s.sign(3.0)), (1.0, -1.0, 1.0));
        assert_eq!(SignTemplate::positive().sign(-5.0), 1.0);
    }

    #[test]
    fn measure_integrates_cusps() {
        let g = grid(2.0);
        let m = build_measure(&g, &[0.013], &GaussLegendre::new(CELL_POINTS));
        let total: f64 = m
            .nodes
            .iter()
            .zip(&m.weights)
            .map(|(&t, &w)| w * (t - 0.013).cbrt())
            .sum();
        let exact = 0.75 * ((2.0f64 - 0.013).powf(4.0 / 3.0) - (2.0f64 + 0.013).powf(4.0 / 3.0));
        assert!((total - exact).abs() < 1e-10, "{total} vs {exact}");
        let width: f64 = m.weights.iter().sum();
        assert!((width - 4.0).abs() < 1e-13);
    }

    #[test]
    fn constant_is_fixed() {
        let cfg = SolverConfig {
            p: 3,
            tol: 1e-12,
            ..SolverConfig::default()
        };
        let phi0 = GridFunction::from_fn(grid(6.0), |_| 1.0).unwrap();
        let out = fixed_point_iterate(&cfg, &phi0).unwrap();
        assert!(out.converged());
        assert!(out
            .solution
            .values()
            .iter()
            .all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn odd_cubic_from_erf() {
        let cfg = SolverConfig {
            p: 3,
            tol: 1e-8,
            odd_symmetry: true,
            ..SolverConfig::default()
        };
        let phi0 = GridFunction::from_fn(grid(10.0), erf).unwrap();
        let out = fixed_point_iterate(&cfg, &phi0).unwrap();
        assert!(out.converged(), "{:?}", out.trace.last());
        let v = out.interpolant.eval(0.0);
        assert!(v.abs() < 1e-12);
        assert!(out.solution.values().iter().all(|v| v.abs() < 1.0));
        assert_eq!(out.interpolant.zeros().len(), 1);
    }

    #[test]
    fn even_template_rejects_negative_convolution() {
        // with the default template sgn(t), phi is near -1 far left, so K phi < 0 there
        let cfg = SolverConfig {
            p: 2,
            ..SolverConfig::default()
        };
        let phi0 = GridFunction::from_fn(grid(6.0), f64::tanh).unwrap();
        assert!(matches!(
            fixed_point_iterate(&cfg, &phi0),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn exact_example_is_a_fixed_point() {
        let rule = gauss_hermite_rule(96).unwrap();
        let ts: Vec<f64> = (0..=40).map(|k| -2.0 + 0.1 * k as f64).collect();
        for p in [2u32, 3] {
            let pf = p as f64;
            let f = |t: f64| pf.powf(1.0 / (2.0 * (pf - 1.0))) * ((pf - 1.0) / pf * t * t).exp();
            let mapped = iteration_map(f, p, &SignTemplate::positive(), &ts, &rule);
            for (t, m) in ts.iter().zip(mapped) {
                assert!((m - f(*t)).abs() < 1e-9 * f(*t), "p={p} t={t}");
            }
        }
    }
}
