//! Heat-flow interpolation u(x, t) between phi = u(0, .) and K phi = u(1, .)
//! for u_x = u_tt / 4, its integral identities, and the splitting of
//! multiple zeros of u(1, .) under backward flow.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::QuadratureRule;
use crate::error::{Error, Result};
use crate::quad::{tanh_sinh, GaussLegendre};
use crate::special::factorial;

/// Step for centered differences in x and t.
pub const FD_STEP: f64 = 1e-4;

/// Half-width in the Gaussian variable beyond which e^{-v^2} is negligible.
const V_CUT: f64 = 9.0;

/// u(x, t) = (1/sqrt(pi x)) int phi(tau) e^{-(t - tau)^2 / x} dtau.
///
/// Smooth boundary data use the Gauss-Hermite rule directly. When phi has
/// algebraic cusps (zeros of a p-th root), pass them as breakpoints: the
/// integral is then split there and each piece is graded toward the cusp.
#[derive(Clone)]
pub struct Interpolant<F> {
    boundary: F,
    rule: QuadratureRule,
    breakpoints: Vec<f64>,
    grading: i32,
    panel_rule: GaussLegendre,
}

impl<F: Fn(f64) -> f64 + Sync> Interpolant<F> {
    pub fn new(boundary: F, rule: QuadratureRule) -> Self {
        Interpolant {
            boundary,
            rule,
            breakpoints: Vec::new(),
            grading: 3,
            panel_rule: GaussLegendre::new(40),
        }
    }

    /// Declares points where phi is not smooth. `grading` is the power of the
    /// substitution used next to them; 3 removes a cube-root cusp.
    pub fn with_breakpoints(mut self, mut points: Vec<f64>, grading: i32) -> Self {
        points.sort_by(f64::total_cmp);
        self.breakpoints = points;
        self.grading = grading.max(1);
        self
    }

    pub fn boundary(&self, t: f64) -> f64 {
        (self.boundary)(t)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn poisson_eval(&self, x: f64, t: f64) -> Result<f64> {
        if x < 0.0 || x.is_nan() {
            return Err(Error::Domain(format!(
                "poisson evaluation needs x >= 0, got {x}"
            )));
        }
        if x == 0.0 {
            return Ok((self.boundary)(t));
        }
        let sx = x.sqrt();
        let cuts: Vec<f64> = self
            .breakpoints
            .iter()
            .map(|&b| (t - b) / sx)
            .filter(|v| v.abs() < V_CUT)
            .collect();
        if cuts.is_empty() {
            return Ok(self.rule.mean(|v| (self.boundary)(t - sx * v)));
        }
        let g = |v: f64| (self.boundary)(t - sx * v) * (-v * v).exp();
        // cuts arrive in decreasing order of v since v = (t - b)/sqrt(x)
        let mut marks = cuts;
        marks.sort_by(f64::total_cmp);
        let mut total = 0.0;
        let graded = |a: f64, b: f64| self.panel_rule.integrate_graded(g, a, b, self.grading, 4);
        total += graded(marks[0], -V_CUT);
        total += graded(marks[marks.len() - 1], V_CUT);
        for w in marks.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            total += graded(w[0], mid) + graded(w[1], mid);
        }
        Ok(total / std::f64::consts::PI.sqrt())
    }

    /// Centered-difference u_t.
    pub fn u_t(&self, x: f64, t: f64) -> Result<f64> {
        Ok(
            (self.poisson_eval(x, t + FD_STEP)? - self.poisson_eval(x, t - FD_STEP)?)
                / (2.0 * FD_STEP),
        )
    }

    /// Centered-difference u_x (one-sided near x = 0).
    pub fn u_x(&self, x: f64, t: f64) -> Result<f64> {
        if x > FD_STEP {
            Ok(
                (self.poisson_eval(x + FD_STEP, t)? - self.poisson_eval(x - FD_STEP, t)?)
                    / (2.0 * FD_STEP),
            )
        } else {
            Ok((self.poisson_eval(x + FD_STEP, t)? - self.poisson_eval(x, t)?) / FD_STEP)
        }
    }

    pub fn u_tt(&self, x: f64, t: f64) -> Result<f64> {
        let h = FD_STEP;
        Ok(
            (self.poisson_eval(x, t + h)? - 2.0 * self.poisson_eval(x, t)?
                + self.poisson_eval(x, t - h)?)
                / (h * h),
        )
    }

    /// A slice u(x, .) on the given t values, as CSV rows `x,t,u`.
    pub fn slice(&self, x: f64, ts: &[f64]) -> Result<Vec<(f64, f64, f64)>> {
        ts.par_iter()
            .map(|&t| self.poisson_eval(x, t).map(|u| (x, t, u)))
            .collect()
    }
}

/// Both sides of the energy identity
/// int phi^2 (1 - phi^{2p-2}) dt = 1/2 int_0^1 int u_t^2 dt dx on a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyIdentity {
    pub lhs: f64,
    pub rhs: f64,
}

impl EnergyIdentity {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// Evaluates the energy identity on `window`. The x-integral uses
/// `xsteps` Gauss-Legendre nodes after x = s^3, which absorbs the mild
/// singularity of int u_t^2 dt at x = 0 when phi has cusps.
pub fn energy_identity<F: Fn(f64) -> f64 + Sync>(
    ip: &Interpolant<F>,
    p: u32,
    window: (f64, f64),
    xsteps: usize,
) -> Result<EnergyIdentity> {
    let (a, b) = window;
    if !(a < b) {
        return Err(Error::param("window", format!("empty window [{a}, {b}]")));
    }
    let expo = (2 * p - 2) as i32;
    let lhs = tanh_sinh(
        |t| {
            let v = ip.boundary(t);
            v * v * (1.0 - v.powi(expo))
        },
        a,
        b,
        ip.breakpoints(),
        0.5,
        1e-13,
    );

    let t_rule = GaussLegendre::new(20);
    let x_rule = GaussLegendre::new(xsteps.max(1));
    let mut rhs = 0.0;
    for (&sn, &sw) in x_rule.nodes.iter().zip(&x_rule.weights) {
        let s = 0.5 + 0.5 * sn;
        let x = s * s * s;
        let jac = 1.5 * s * s * sw;
        let edges = t_edges(a, b, ip.breakpoints(), x.sqrt());
        let panels: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
        let parts = panels
            .par_iter()
            .map(|&(lo, hi)| -> Result<f64> {
                let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
                let mut acc = 0.0;
                for (&z, &w) in t_rule.nodes.iter().zip(&t_rule.weights) {
                    let ut = ip.u_t(x, mid + half * z)?;
                    acc += half * w * ut * ut;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<f64>>>()?;
        rhs += jac * parts.iter().sum::<f64>();
    }
    Ok(EnergyIdentity {
        lhs,
        rhs: 0.5 * rhs,
    })
}

/// Panel edges on [a, b]: a uniform 0.1 mesh refined geometrically near the
/// breakpoints on the scale of the heat kernel width.
fn t_edges(a: f64, b: f64, breaks: &[f64], width: f64) -> Vec<f64> {
    let n = ((b - a) / 0.1).ceil() as usize;
    let mut edges: Vec<f64> = (0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect();
    for &c in breaks {
        for m in [0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
            for s in [-1.0, 1.0] {
                let e = c + s * m * width;
                if e > a && e < b {
                    edges.push(e);
                }
            }
        }
    }
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    edges
}

/// Outcome of the mean conservation check.
#[derive(Debug, Clone, PartialEq)]
pub enum MeanConservation {
    /// |int (u(x,t) - phi) dt| and |int (phi - phi^p) dt| on the window.
    Residuals { heat: f64, power: f64 },
    /// The integrands do not decay at the window edges.
    NotApplicable { reason: String },
}

pub fn mean_conservation<F: Fn(f64) -> f64 + Sync>(
    ip: &Interpolant<F>,
    p: u32,
    x: f64,
    window: (f64, f64),
) -> Result<MeanConservation> {
    if x < 0.0 {
        return Err(Error::Domain(format!("need x >= 0, got {x}")));
    }
    let (a, b) = window;
    let powered = |t: f64| {
        let v = ip.boundary(t);
        v - v.powi(p as i32)
    };
    for edge in [a, b] {
        let v = ip.boundary(edge);
        if !v.is_finite() || powered(edge).abs() > 1e-3 {
            return Ok(MeanConservation::NotApplicable {
                reason: format!(
                    "phi - phi^p = {:.3e} at t = {edge}; boundary limits do not hold",
                    powered(edge)
                ),
            });
        }
    }
    let power = tanh_sinh(powered, a, b, ip.breakpoints(), 0.5, 1e-13).abs();
    let heat = if x == 0.0 {
        0.0
    } else {
        let diff = |t: f64| ip.poisson_eval(x, t).unwrap_or(f64::NAN) - ip.boundary(t);
        tanh_sinh(diff, a, b, ip.breakpoints(), 0.5, 1e-12).abs()
    };
    Ok(MeanConservation::Residuals { heat, power })
}

/// A truncated improper integral at two cut-offs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailIntegral {
    pub name: &'static str,
    pub at_half: f64,
    pub at_full: f64,
}

impl TailIntegral {
    /// Change between the two cut-offs, small when the integral converges.
    pub fn drift(&self) -> f64 {
        (self.at_full - self.at_half).abs()
    }
}

/// Diagnostic partial integrals of 1 - phi^{p-1} and 1 - phi on [0, L] and
/// [0, L/2], plus int phi (or 1 + phi when phi tends to -1) on the left half
/// line when phi keeps one sign there. Nothing is asserted.
pub fn tail_integrals<F: Fn(f64) -> f64>(
    phi: F,
    p: u32,
    breaks: &[f64],
    reach: f64,
) -> Vec<TailIntegral> {
    let half = 0.5 * reach;
    let right = |name: &'static str, g: &dyn Fn(f64) -> f64| TailIntegral {
        name,
        at_half: tanh_sinh(g, 0.0, half, breaks, 0.5, 1e-12),
        at_full: tanh_sinh(g, 0.0, reach, breaks, 0.5, 1e-12),
    };
    let power = |t: f64| 1.0 - phi(t).powi(p as i32 - 1);
    let lin = |t: f64| 1.0 - phi(t);
    let mut out = vec![
        right("one_minus_power_right", &power),
        right("one_minus_phi_right", &lin),
    ];
    let samples: Vec<f64> = (1..=100).map(|k| phi(-reach * k as f64 / 100.0)).collect();
    let one_sign = samples.iter().all(|v| *v >= 0.0) || samples.iter().all(|v| *v <= 0.0);
    if one_sign {
        let left_limit = samples.last().copied().unwrap_or(0.0);
        let shifted = |t: f64| phi(t) - left_limit.round();
        out.push(TailIntegral {
            name: "phi_left",
            at_half: tanh_sinh(shifted, -half, 0.0, breaks, 0.5, 1e-12),
            at_full: tanh_sinh(shifted, -reach, 0.0, breaks, 0.5, 1e-12),
        });
    }
    out
}

/// Caloric polynomial sum_m (-1)^m t^{k-2m} / ((k-2m)! m!) (eps/4)^m, which
/// solves u_x = u_tt/4 in x = 1 - eps and equals t^k / k! at eps = 0.
pub fn caloric_polynomial(k: usize, eps: f64, t: f64) -> f64 {
    (0..=k / 2)
        .map(|m| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign * t.powi((k - 2 * m) as i32) / (factorial(k - 2 * m) * factorial(m))
                * (eps / 4.0).powi(m as i32)
        })
        .sum()
}

/// The even caloric polynomial of degree 2n; its zeros are lambda sqrt(eps)/2
/// for the branching roots lambda.
pub fn heat_polynomial(n: usize, eps: f64, t: f64) -> f64 {
    caloric_polynomial(2 * n, eps, t)
}

/// sum_m (-1)^m lambda^{2n-2m} / ((2n-2m)! m!) and its form in Lambda = lambda^2.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchingPolynomial {
    pub n: usize,
    /// Coefficients in powers of lambda, lowest first (odd powers vanish).
    pub lambda_coeffs: Vec<f64>,
    /// Coefficients in powers of Lambda, lowest first.
    pub big_lambda_coeffs: Vec<f64>,
}

impl BranchingPolynomial {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n", "need n >= 1"));
        }
        let big: Vec<f64> = (0..=n)
            .map(|j| {
                // power j of Lambda comes from m = n - j
                let m = n - j;
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                sign / (factorial(2 * j) * factorial(m))
            })
            .collect();
        let mut small = vec![0.0; 2 * n + 1];
        for (j, c) in big.iter().enumerate() {
            small[2 * j] = *c;
        }
        Ok(BranchingPolynomial {
            n,
            lambda_coeffs: small,
            big_lambda_coeffs: big,
        })
    }

    /// Value in Lambda, scaled by (2n)! so the leading coefficient is 1.
    pub fn eval_monic(&self, big_lambda: f64) -> f64 {
        let lead = self.big_lambda_coeffs[self.n];
        self.big_lambda_coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * big_lambda + c / lead)
    }

    pub fn eval_lambda(&self, lambda: f64) -> f64 {
        self.lambda_coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * lambda + c)
    }

    /// The n roots Lambda_k, ascending: companion-matrix eigenvalues refined
    /// by bisection. All must be real and positive.
    pub fn big_lambda_roots(&self) -> Result<Vec<f64>> {
        let n = self.n;
        let lead = self.big_lambda_coeffs[n];
        let companion = DMatrix::from_fn(n, n, |i, j| {
            if i == 0 {
                -self.big_lambda_coeffs[n - 1 - j] / lead
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        let eig = companion.complex_eigenvalues();
        let mut roots = Vec::with_capacity(n);
        for z in eig.iter() {
            let scale = z.norm().max(1.0);
            if z.im.abs() > 1e-8 * scale {
                return Err(Error::Domain(format!(
                    "branching polynomial of order {n} has a complex root {z}; all roots must be real"
                )));
            }
            if z.re <= 0.0 {
                return Err(Error::Domain(format!(
                    "branching polynomial of order {n} has a non-positive root {}",
                    z.re
                )));
            }
            roots.push(self.refine(z.re));
        }
        roots.sort_by(f64::total_cmp);
        Ok(roots)
    }

    fn refine(&self, guess: f64) -> f64 {
        let f = |x: f64| self.eval_monic(x);
        let mut delta = 1e-9 * guess.max(1e-3);
        let (mut lo, mut hi) = (guess - delta, guess + delta);
        let mut tries = 0;
        while f(lo).signum() == f(hi).signum() && tries < 40 {
            delta *= 2.0;
            lo = (guess - delta).max(0.0);
            hi = guess + delta;
            tries += 1;
        }
        if f(lo).signum() == f(hi).signum() {
            return guess;
        }
        bisect(f, lo, hi, 1e-13 * guess.max(1.0))
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The 2n roots lambda = +-sqrt(Lambda_k), ascending.
pub fn branching_roots(n: usize) -> Result<Vec<f64>> {
    if !(1..=20).contains(&n) {
        return Err(Error::param("n", format!("need 1 <= n <= 20, got {n}")));
    }
    let big = BranchingPolynomial::new(n)?.big_lambda_roots()?;
    let mut out: Vec<f64> = big.iter().map(|l| -l.sqrt()).collect();
    out.extend(big.iter().map(|l| l.sqrt()));
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Roots of u(1 - eps, .) near 0 against the predictions lambda sqrt(eps)/2.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTracking {
    pub n: usize,
    pub eps: f64,
    pub roots: Vec<f64>,
    pub predicted: Vec<f64>,
}

impl ZeroTracking {
    /// Whether 2n roots were found.
    pub fn count_matches(&self) -> bool {
        self.roots.len() == self.predicted.len()
    }

    /// Largest |root - prediction| when counts match.
    pub fn max_deviation(&self) -> Option<f64> {
        self.count_matches().then(|| {
            self.roots
                .iter()
                .zip(&self.predicted)
                .map(|(r, p)| (r - p).abs())
                .fold(0.0, f64::max)
        })
    }
}

/// Finds the real roots of a slice `u(t) = u(1 - eps, t)` in
/// |t| <= 3 sqrt(eps) max|lambda| by sign scan (step sqrt(eps)/50) and bisection.
pub fn track_zeros<U: Fn(f64) -> f64>(u: U, n: usize, eps: f64) -> Result<ZeroTracking> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::param(
            "eps",
            format!("need 0 < eps <= 0.5, got {eps}"),
        ));
    }
    let lambdas = branching_roots(n)?;
    let se = eps.sqrt();
    let predicted: Vec<f64> = lambdas.iter().map(|l| 0.5 * l * se).collect();
    let lmax = lambdas.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let reach = 3.0 * se * lmax;
    let roots = scan_roots(&u, -reach, reach, se / 50.0);
    Ok(ZeroTracking {
        n,
        eps,
        roots,
        predicted,
    })
}

/// Sign-change roots of f on [a, b] with the given scan step.
pub fn scan_roots<U: Fn(f64) -> f64>(f: &U, a: f64, b: f64, step: f64) -> Vec<f64> {
    let steps = ((b - a) / step).ceil() as usize;
    let h = (b - a) / steps as f64;
    let mut roots = Vec::new();
    let mut prev_t = a;
    let mut prev = f(a);
    if prev == 0.0 {
        roots.push(a);
    }
    for k in 1..=steps {
        let t = a + k as f64 * h;
        let v = f(t);
        if v == 0.0 {
            roots.push(t);
        } else if prev != 0.0 && v.signum() != prev.signum() {
            roots.push(bisect(f, prev_t, t, 1e-15 * (1.0 + t.abs())));
        }
        prev_t = t;
        prev = v;
    }
    roots
}

/// Result of the kernel estimate comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEstimate {
    pub bound: f64,
    /// min over t of (bound - J(x, t)).
    pub margin: f64,
}

/// x^{q/(2q-1)} (1+x)^{-1/(4q-2)} sqrt((2q-1)/(2qx-x-1)).
pub fn kernel_bound(q: u32, x: f64) -> Result<f64> {
    if q == 0 {
        return Err(Error::param("q", "need q >= 1"));
    }
    let qf = q as f64;
    if !(x > 1.0 / (2.0 * qf - 1.0)) {
        return Err(Error::Domain(format!(
            "need x > 1/(2q-1) = {}, got {x}",
            1.0 / (2.0 * qf - 1.0)
        )));
    }
    Ok(x.powf(qf / (2.0 * qf - 1.0))
        * (1.0 + x).powf(-1.0 / (4.0 * qf - 2.0))
        * ((2.0 * qf - 1.0) / (2.0 * qf * x - x - 1.0)).sqrt())
}

/// Compares J(x,t) = (1/sqrt(pi x)) int phi^{2q} e^{-(t-tau)^2/x} dtau with the bound.
pub fn kernel_estimate_check<F: Fn(f64) -> f64>(
    phi: F,
    q: u32,
    x: f64,
    ts: &[f64],
    rule: &QuadratureRule,
) -> Result<KernelEstimate> {
    let bound = kernel_bound(q, x)?;
    let sx = x.sqrt();
    let margin = ts
        .iter()
        .map(|&t| bound - rule.mean(|v| phi(t - sx * v).powi(2 * q as i32)))
        .fold(f64::INFINITY, f64::min);
    Ok(KernelEstimate { bound, margin })
}

/// A zero of a sampled function with its estimated order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero {
    pub t: f64,
    /// Fitted order of vanishing, e.g. 1/3 for a cube-root crossing.
    pub order: f64,
}

/// Jump discontinuity located between two nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub t: f64,
    pub saltus: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZeroReport {
    pub zeros: Vec<Zero>,
    pub jumps: Vec<Jump>,
}

impl ZeroReport {
    pub fn sign_changes(&self) -> usize {
        self.zeros.len()
    }
}

/// Log-log slope of |f(t0 +- h)| over the dyadic ladder h = 2^{-j}, j in `ladder`.
pub fn vanishing_order<F: Fn(f64) -> f64>(
    f: &F,
    t0: f64,
    ladder: std::ops::RangeInclusive<i32>,
) -> f64 {
    let pts: Vec<(f64, f64)> = ladder
        .flat_map(|j| {
            let h = 2f64.powi(-j);
            [(h, f(t0 + h)), (h, f(t0 - h))]
        })
        .filter(|(_, v)| *v != 0.0)
        .map(|(h, v)| (h.ln(), v.abs().ln()))
        .collect();
    slope(&pts)
}

/// Least-squares slope.
pub fn slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Scans f on `ts` for sign changes (refined by bisection, order fitted on a
/// dyadic ladder) and for jumps larger than `jump_tol` between neighbours.
pub fn zero_report<F: Fn(f64) -> f64>(f: &F, ts: &[f64], jump_tol: f64) -> ZeroReport {
    let mut report = ZeroReport::default();
    for w in ts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (f(a), f(b));
        if (fb - fa).abs() > jump_tol {
            let t = bisect_jump(f, a, b);
            report.jumps.push(Jump {
                t,
                saltus: f(t + 1e-12) - f(t - 1e-12),
            });
        }
        let crosses = fa != 0.0 && fb != 0.0 && fa.signum() != fb.signum();
        if crosses || fa == 0.0 {
            let t = if fa == 0.0 {
                a
            } else {
                bisect(f, a, b, 1e-14 * (1.0 + a.abs()))
            };
            let order = vanishing_order(f, t, 6..=12);
            report.zeros.push(Zero { t, order });
        }
    }
    report
}

fn bisect_jump<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if (f(mid) - f(a)).abs() > (f(b) - f(mid)).abs() {
            b = mid;
        } else {
            a = mid;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::gauss_hermite_rule;
    use approx::assert_relative_eq;

    fn rule() -> QuadratureRule {
        gauss_hermite_rule(96).unwrap()
    }

    #[test]
    fn poisson_basic() {
        let ip = Interpolant::new(|_| 1.0, rule());
        for &x in &[0.0, 0.3, 1.0, 2.5] {
            assert!((ip.poisson_eval(x, 0.7).unwrap() - 1.0).abs() < 1e-14);
        }
        let ip = Interpolant::new(|t| t * t, rule());
        assert!((ip.poisson_eval(1.0, 0.0).unwrap() - 0.5).abs() < 1e-13);
        assert_eq!(ip.poisson_eval(0.0, 3.0).unwrap(), 9.0);
        assert!(ip.poisson_eval(-0.1, 0.0).is_err());
    }

    #[test]
    fn exact_example_interpolant() {
        let p = 2.0f64;
        let c = p.powf(1.0 / (2.0 * (p - 1.0)));
        let ip = Interpolant::new(move |t: f64| c * ((p - 1.0) / p * t * t).exp(), rule());
        let (x, t) = (0.5f64, 0.3f64);
        let exact = 2f64.sqrt() * (1.0 - x / 2.0).powf(-0.5) * (t * t / (2.0 - x)).exp();
        assert!((ip.poisson_eval(x, t).unwrap() - exact).abs() < 1e-9);
    }

    #[test]
    fn breakpoint_path_agrees_on_smooth_data() {
        let f = |t: f64| (0.7 * t).sin() + 0.2 * t;
        let plain = Interpolant::new(f, rule());
        let split = Interpolant::new(f, rule()).with_breakpoints(vec![0.1, 0.4], 3);
        for &(x, t) in &[(0.01, 0.2), (0.5, 0.0), (1.0, -0.3)] {
            let a = plain.poisson_eval(x, t).unwrap();
            let b = split.poisson_eval(x, t).unwrap();
            assert!((a - b).abs() < 1e-12, "x={x} t={t}: {a} vs {b}");
        }
    }

    #[test]
    fn cusp_data_with_breakpoint() {
        // u(x, t) for phi = cbrt(t) at t = 0 vanishes by symmetry; at x = 1,
        // t = 1 compare with a tanh-sinh reference.
        let ip = Interpolant::new(f64::cbrt, rule()).with_breakpoints(vec![0.0], 3);
        assert!(ip.poisson_eval(0.3, 0.0).unwrap().abs() < 1e-14);
        let reference = tanh_sinh(
            |tau: f64| tau.cbrt() * (-(1.0 - tau) * (1.0 - tau)).exp(),
            -12.0,
            14.0,
            &[0.0],
            1.0,
            1e-14,
        ) / std::f64::consts::PI.sqrt();
        assert!((ip.poisson_eval(1.0, 1.0).unwrap() - reference).abs() < 1e-12);
    }

    #[test]
    fn heat_polynomial_values() {
        assert_eq!(heat_polynomial(1, 0.0, 0.6), 0.18);
        let (eps, t) = (0.2f64, 0.45f64);
        assert_relative_eq!(
            heat_polynomial(1, eps, t),
            t * t / 2.0 - eps / 4.0,
            max_relative = 1e-14
        );
        let z = (eps / 2.0).sqrt();
        assert!(heat_polynomial(1, eps, z).abs() < 1e-16);
        // u_x = u_tt/4 with x = 1 - eps
        let (e, t, h) = (0.1, 0.3, 1e-3);
        let ux = -(heat_polynomial(2, e + h, t) - heat_polynomial(2, e - h, t)) / (2.0 * h);
        let utt = (heat_polynomial(2, e, t + h) - 2.0 * heat_polynomial(2, e, t)
            + heat_polynomial(2, e, t - h))
            / (h * h);
        assert!((ux - utt / 4.0).abs() < 1e-7);
    }

    #[test]
    fn branching_examples() {
        let r = branching_roots(1).unwrap();
        assert!((r[1] - 2f64.sqrt()).abs() < 1e-12 && (r[0] + 2f64.sqrt()).abs() < 1e-12);
        let r = branching_roots(2).unwrap();
        let s6 = 6f64.sqrt();
        let expect = [
            -(6.0 + 2.0 * s6).sqrt(),
            -(6.0 - 2.0 * s6).sqrt(),
            (6.0 - 2.0 * s6).sqrt(),
            (6.0 + 2.0 * s6).sqrt(),
        ];
        for (a, b) in r.iter().zip(expect) {
            assert!((a - b).abs() < 1e-10);
        }
        let r = branching_roots(3).unwrap();
        for (a, b) in r[3..].iter().zip([0.87, 2.67, 4.70]) {
            assert!((a - b).abs() < 1e-2);
        }
        assert!(branching_roots(0).is_err());
        assert!(branching_roots(21).is_err());
    }

    #[test]
    fn branching_polynomial_forms() {
        let p = BranchingPolynomial::new(2).unwrap();
        // lambda^4 - 12 lambda^2 + 12, divided by 4!
        assert_relative_eq!(p.eval_lambda(1.0) * 24.0, 1.0, max_relative = 1e-14);
        assert_relative_eq!(p.eval_monic(1.0), 1.0, max_relative = 1e-14);
        let p = BranchingPolynomial::new(3).unwrap();
        assert_relative_eq!(
            p.eval_monic(2.0),
            8.0 - 120.0 + 360.0 - 120.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn tracking_quadratic() {
        for &eps in &[0.01, 0.2, 0.5] {
            let tr = track_zeros(|t| heat_polynomial(1, eps, t), 1, eps).unwrap();
            assert_eq!(tr.roots.len(), 2);
            let z = (eps / 2.0).sqrt();
            assert!((tr.roots[0] + z).abs() < 1e-13 && (tr.roots[1] - z).abs() < 1e-13);
        }
        assert!(track_zeros(|t| t, 1, 0.0).is_err());
    }

    #[test]
    fn kernel_estimate() {
        let b = kernel_bound(2, 1.0).unwrap();
        assert!((b - 2f64.powf(-1.0 / 6.0) * 1.5f64.sqrt()).abs() < 1e-15);
        assert!((b - 1.0911).abs() < 1e-4);
        let k = kernel_estimate_check(|_| 1.0, 2, 1.0, &[-1.0, 0.0, 2.0], &rule()).unwrap();
        assert!((k.margin - (b - 1.0)).abs() < 1e-13);
        assert!(kernel_bound(1, 1.0).is_err());
        assert!(kernel_bound(2, 0.3).is_err());
    }

    #[test]
    fn zero_reports() {
        let ts: Vec<f64> = (0..=40).map(|k| -1.0 + 0.05 * k as f64 + 0.013).collect();
        let rep = zero_report(&|t: f64| (t - 0.2).cbrt(), &ts, 10.0);
        assert_eq!(rep.zeros.len(), 1);
        assert!((rep.zeros[0].t - 0.2).abs() < 1e-12);
        assert!((rep.zeros[0].order - 1.0 / 3.0).abs() < 1e-6);
        let rep = zero_report(&|t: f64| if t < 0.31 { 0.5 } else { 1.5 }, &ts, 0.5);
        assert_eq!(rep.jumps.len(), 1);
        assert!((rep.jumps[0].t - 0.31).abs() < 1e-9);
        assert_eq!(rep.jumps[0].saltus, 1.0);
    }

    #[test]
    fn tail_integrals_of_a_step() {
        let step = |t: f64| 0.5 + 0.5 * crate::special::erf(t);
        let tails = tail_integrals(step, 2, &[], 10.0);
        assert_eq!(tails.len(), 3);
        assert!(tails.iter().all(|t| t.drift() < 1e-10), "{tails:?}");
        // int_0^inf erfc(t)/2 dt = 1/(2 sqrt(pi))
        let expect = 0.5 / std::f64::consts::PI.sqrt();
        assert!((tails[1].at_full - expect).abs() < 1e-12);
    }

    #[test]
    fn energy_identity_trivial() {
        let ip = Interpolant::new(|_| 1.0, rule());
        let e = energy_identity(&ip, 2, (-5.0, 5.0), 6).unwrap();
        assert_eq!(e.lhs, 0.0);
        assert!(e.rhs.abs() < 1e-20);
    }

    #[test]
    fn mean_conservation_gate() {
        let ip = Interpolant::new(|_| 1.0, rule());
        match mean_conservation(&ip, 3, 0.5, (-10.0, 10.0)).unwrap() {
            MeanConservation::Residuals { heat, power } => assert!(heat < 1e-13 && power == 0.0),
            other => panic!("{other:?}"),
        }
        let ip = Interpolant::new(|t: f64| 2f64.sqrt() * (t * t / 2.0).exp(), rule());
        assert!(matches!(
            mean_conservation(&ip, 2, 0.5, (-10.0, 10.0)).unwrap(),
            MeanConservation::NotApplicable { .. }
        ));
    }
}
