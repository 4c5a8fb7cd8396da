//! Tunable tolerances and budgets, with the defaults used throughout.

use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Config {
    /// Absolute tolerance for bracketed bisection.
    pub bisect_tol: f64,
    /// Convergence tolerance for the branch iteration (|Δs| and |Δbound|).
    pub iter_tol: f64,
    /// Iteration cap per branch.
    pub max_iterations: usize,
    /// Cells for the descending largest-root scan.
    pub root_scan_cells: usize,
    /// Cells for the relaxed-mode zero scan of the adjacent system.
    pub adjacent_scan_cells: usize,
    /// Evaluation budget per optimization half-step.
    pub optimizer_budget: usize,
    /// Grid restarts per dimension for the box optimizer.
    pub starts_per_dim: usize,
    /// Cells for sampled shape certification of polynomials.
    pub shape_grid_cells: usize,
    /// Random restarts for the covering-radius descent.
    pub covering_restarts: usize,
    /// Tolerance for the covering-radius local descent.
    pub covering_tol: f64,
    /// RNG seed for all randomized procedures.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            bisect_tol: 1e-12,
            iter_tol: 1e-9,
            max_iterations: 100,
            root_scan_cells: 2000,
            adjacent_scan_cells: 10_000,
            optimizer_budget: 10_000,
            starts_per_dim: 5,
            shape_grid_cells: 2000,
            covering_restarts: 5000,
            covering_tol: 1e-10,
            seed: 0,
        }
    }
}
