//! Solvers for phi^p = K phi: the truncated Hermite-coefficient system for
//! p = 2, the grid fixed-point iteration for general p, and checks of a
//! computed solution.

mod iterate;
mod truncated;
mod verify;

pub use iterate::{
    fixed_point_iterate, iteration_map, FixedPointOutcome, PowerInterpolant, SignTemplate,
    Termination, TraceEntry, GROWTH_LIMIT,
};
pub use truncated::{
    assemble_system, newton_solve, solve_3approx, ApproxSolution3, BranchLabel, NewtonOutcome,
    TruncatedSystem, JACOBIAN_STEP,
};
pub use verify::{
    conservation_laws_check, limit_diagnostics, residual, residual_split, zero_moments,
    LimitReport, SideLimit,
};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub p: u32,
    /// Truncation order N of the coefficient system.
    pub order: usize,
    /// Gauss-Hermite order M.
    pub quad_order: usize,
    pub tol: f64,
    pub max_iter: usize,
    /// Relaxation d in (0, 1].
    pub damping: f64,
    pub grid_halfwidth: f64,
    pub grid_step: f64,
    /// Antisymmetrize each iterate (for odd p and odd data).
    pub odd_symmetry: bool,
    /// Sign pattern for even p; sgn(t) when absent.
    pub sign: Option<SignTemplate>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            p: 2,
            order: 3,
            quad_order: 96,
            tol: 1e-10,
            max_iter: 500,
            damping: 1.0,
            grid_halfwidth: 10.0,
            grid_step: 0.05,
            odd_symmetry: false,
            sign: None,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p < 2 {
            return Err(Error::param("p", format!("need p >= 2, got {}", self.p)));
        }
        if self.order < 3 {
            return Err(Error::param(
                "N",
                format!("need N >= 3, got {}", self.order),
            ));
        }
        if !(self.tol > 0.0) {
            return Err(Error::param(
                "tol",
                format!("must be positive, got {}", self.tol),
            ));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::param(
                "damping",
                format!("must lie in (0, 1], got {}", self.damping),
            ));
        }
        if !(self.grid_halfwidth >= 5.0) {
            return Err(Error::param(
                "grid_halfwidth",
                format!("need >= 5, got {}", self.grid_halfwidth),
            ));
        }
        if !(self.grid_step > 0.0) {
            return Err(Error::param(
                "grid_step",
                format!("must be positive, got {}", self.grid_step),
            ));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        crate::basis::GridFunction::uniform_nodes(self.grid_halfwidth, self.grid_step)
    }
}
