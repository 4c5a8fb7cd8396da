//! Lower bounds on the covering radius ρ(C): the cardinality floor, the
//! universal largest-Jacobi-zero bound, its signed-measure improvement, and
//! the two-case iterative refinement driven by the m(C) point count.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::adjacent::{AdjacentError, AdjacentSystem};
use crate::config::Config;
use crate::optimize::{minimize_box, minimize_grid_1d};
use crate::orthopoly::{gegenbauer_f0, jacobi_largest_zero};
use crate::poly::Polynomial;
use crate::roots::largest_root;
use crate::scalar::Real;

#[derive(Debug, Error)]
pub enum LowerBoundError {
    #[error("cardinality {cardinality} below the design floor {floor} for (n={n}, tau={tau})")]
    CardinalityBelowFloor { n: usize, tau: usize, cardinality: u64, floor: u64 },
    #[error("strength {0} is not even; the refinement machinery needs tau = 2k")]
    OddStrength(usize),
    #[error("zero {zero} outside the admissible window [{lo}, {hi}]")]
    ZeroOutsideWindow { zero: f64, lo: f64, hi: f64 },
    #[error("shape certification failed: {0}")]
    ShapeCheckFailed(String),
    #[error(transparent)]
    Adjacent(#[from] AdjacentError),
    #[error("no m <= cardinality - n admits a witness; procedure inapplicable")]
    ProcedureInapplicable,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Minimum cardinality of a strength-τ design in dimension n:
/// D(n, τ) = C(n+k-2+e, n-1) + C(n+k-2, n-1) with τ = 2k-1+e.
pub fn dgs_bound(n: usize, tau: usize) -> u64 {
    assert!(tau >= 1 && n >= 2);
    let k = (tau + 1) / 2;
    let e = tau + 1 - 2 * k;
    binomial((n + k - 2 + e) as u64, (n - 1) as u64) + binomial((n + k - 2) as u64, (n - 1) as u64)
}

/// Universal lower bound on ρ(C) for strength-τ designs: the largest zero of
/// the Jacobi polynomial with α = (n-3)/2, β = α + e, degree k, τ = 2k-1+e.
pub fn fl_bound<S: Real>(n: usize, tau: usize) -> S {
    assert!(tau >= 2 && n >= 2);
    let k = (tau + 1) / 2;
    let e = tau + 1 - 2 * k;
    let alpha = (S::of_usize(n) - S::of(3.0)) / S::of(2.0);
    jacobi_largest_zero(alpha, alpha + S::of_usize(e), k)
}

/// Hypothetical design parameters: τ = 2k-1+e with e ∈ {0,1}.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DesignSpec {
    pub dimension: usize,
    pub k: usize,
    pub e: u8,
    pub cardinality: u64,
}

impl DesignSpec {
    pub fn new(dimension: usize, tau: usize, cardinality: u64) -> Result<Self, LowerBoundError> {
        let floor = dgs_bound(dimension, tau);
        if cardinality < floor {
            return Err(LowerBoundError::CardinalityBelowFloor {
                n: dimension,
                tau,
                cardinality,
                floor,
            });
        }
        let k = (tau + 1) / 2;
        let e = (tau + 1 - 2 * k) as u8;
        Ok(Self { dimension, k, e, cardinality })
    }

    pub fn strength(&self) -> usize {
        2 * self.k - 1 + self.e as usize
    }

    pub fn is_even_strength(&self) -> bool {
        self.e == 1
    }
}

/// ρ(C) ≥ t_{k,k}^{0,ℓ} under the hypothesis ℓ ≤ t_1(y) (even strength).
pub fn lower_bound_given_ell<S: Real>(n: usize, k: usize, ell: S) -> Result<S, LowerBoundError> {
    Ok(AdjacentSystem::new(n, k, ell)?.largest_zero())
}

/// f(t) = Π (t - αᵢ)², zeros in [ℓ, t_FL]: decreasing on [-1, ℓ], nonnegative
/// in between, increasing on [t_FL, 1]. Shape asserted by sampled derivative
/// signs on a grid.
pub fn make_a_polynomial<S: Real>(
    zeros: &[S],
    ell: S,
    t_fl: S,
    grid_cells: usize,
) -> Result<Polynomial<S>, LowerBoundError> {
    for &z in zeros {
        if !(z >= ell && z <= t_fl) {
            return Err(LowerBoundError::ZeroOutsideWindow {
                zero: z.as_f64(),
                lo: ell.as_f64(),
                hi: t_fl.as_f64(),
            });
        }
    }
    let f = Polynomial::from_roots(zeros).squared();
    let df = f.derivative();
    let check = |lo: S, hi: S, sign_nonneg: bool, label: &str| -> Result<(), LowerBoundError> {
        for i in 0..=grid_cells {
            let t = lo + (hi - lo) * S::of_usize(i) / S::of_usize(grid_cells.max(1));
            let d = df.eval(t);
            let ok = if sign_nonneg { d >= -S::of(1e-9) } else { d <= S::of(1e-9) };
            if !ok {
                return Err(LowerBoundError::ShapeCheckFailed(format!(
                    "derivative sign on {} violated at t = {}",
                    label, t
                )));
            }
        }
        Ok(())
    };
    check(-S::one(), ell, false, "[-1, ell]")?;
    check(t_fl, S::one(), true, "[t_FL, 1]")?;
    for i in 0..=grid_cells {
        let t = ell + (t_fl - ell) * S::of_usize(i) / S::of_usize(grid_cells.max(1));
        if f.eval(t) < -S::of(1e-12) {
            return Err(LowerBoundError::ShapeCheckFailed(format!("negative value at t = {}", t)));
        }
    }
    Ok(f)
}

/// g(t) = (t + 1) B²(t) (t - s) with B's zeros in [-1, s]: nonpositive on
/// [-1, s], positive and increasing on (s, 1]. Sampled checks as above.
pub fn make_b_polynomial<S: Real>(
    s: S,
    zeros: &[S],
    grid_cells: usize,
) -> Result<Polynomial<S>, LowerBoundError> {
    for &z in zeros {
        if !(z >= -S::one() && z <= s) {
            return Err(LowerBoundError::ZeroOutsideWindow {
                zero: z.as_f64(),
                lo: -1.0,
                hi: s.as_f64(),
            });
        }
    }
    let b2 = Polynomial::from_roots(zeros).squared();
    let g = &(&Polynomial::from_coeffs(vec![S::one(), S::one()]) * &b2)
        * &Polynomial::from_coeffs(vec![-s, S::one()]);
    for i in 0..=grid_cells {
        let t = -S::one() + (s + S::one()) * S::of_usize(i) / S::of_usize(grid_cells.max(1));
        if g.eval(t) > S::of(1e-12) {
            return Err(LowerBoundError::ShapeCheckFailed(format!("positive value at t = {}", t)));
        }
    }
    let dg = g.derivative();
    for i in 0..=grid_cells {
        let t = s + (S::one() - s) * S::of_usize(i) / S::of_usize(grid_cells.max(1));
        if dg.eval(t) < -S::of(1e-9) {
            return Err(LowerBoundError::ShapeCheckFailed(format!(
                "not increasing on [s, 1] at t = {}",
                t
            )));
        }
    }
    Ok(g)
}

/// Outcome of the m(C) search.
#[derive(Clone, Debug, Serialize)]
pub struct McResult {
    pub m: u64,
    /// True when the optimizer's raw minimum fell below the geometric floor n
    /// and the result was clamped up to n.
    pub clamped: bool,
    /// Zeros of the A-class witness attaining the minimum margin ratio.
    pub witness_zeros: Vec<f64>,
    /// min over f of (f_0 M - f(ℓ)) / f(t_FL).
    pub x_min: f64,
}

struct BranchContext<S> {
    n: usize,
    k: usize,
    m_points: u64,
    ell: S,
    t_fl: S,
    t_star: S,
    cardinality: S,
}

impl<S: Real> BranchContext<S> {
    fn f0_of(&self, p: &Polynomial<S>) -> S {
        gegenbauer_f0(self.n, p)
    }
}

/// Smallest m admitting an A-class witness of the margin inequality
/// f_0|C| < f(ℓ) + (m+1) f(t_FL), floored at n.
pub fn compute_mc<S: Real>(
    spec: &DesignSpec,
    ell: S,
    cfg: &Config,
) -> Result<McResult, LowerBoundError> {
    if !spec.is_even_strength() {
        return Err(LowerBoundError::OddStrength(spec.strength()));
    }
    let n = spec.dimension;
    let k = spec.k;
    let t_fl = fl_bound::<S>(n, spec.strength());
    let card = S::of_usize(spec.cardinality as usize);

    let objective = |zeros: &[S]| -> S {
        let f = Polynomial::from_roots(zeros).squared();
        let at_fl = f.eval(t_fl);
        if !(at_fl > S::zero()) {
            return S::infinity();
        }
        (gegenbauer_f0(n, &f) * card - f.eval(ell)) / at_fl
    };
    let lo = vec![ell; k];
    let hi = vec![t_fl; k];
    let (witness, x_min) =
        minimize_box(objective, &lo, &hi, cfg.starts_per_dim, cfg.optimizer_budget, None);
    if !x_min.is_finite() {
        return Err(LowerBoundError::ProcedureInapplicable);
    }
    let raw = (x_min - S::one()).floor().as_f64() as i64 + 1;
    let clamped = raw < n as i64;
    let m = raw.max(n as i64) as u64;
    if m > spec.cardinality.saturating_sub(n as u64) {
        return Err(LowerBoundError::ProcedureInapplicable);
    }
    Ok(McResult {
        m,
        clamped,
        witness_zeros: witness.iter().map(|z| z.as_f64()).collect(),
        x_min: x_min.as_f64(),
    })
}

/// Which side of ℓ the smallest inner product t_1(y) is assumed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TailCase {
    /// t_1(y) ∈ [-1, ℓ]
    BelowEll,
    /// t_1(y) ≥ ℓ
    AboveEll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BranchStatus {
    Converged,
    IterationLimit,
    /// The bound equation became unsatisfiable: parameters infeasible in this
    /// scenario (a nonexistence signal, not a bound).
    Infeasible,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub s: f64,
    pub bound_raw: f64,
    pub bound_best: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchOutcome {
    pub case: TailCase,
    pub j: u64,
    pub s: f64,
    pub bound: f64,
    pub iterations: usize,
    pub status: BranchStatus,
    pub trace: Vec<IterationRecord>,
}

/// One (case, j) branch of the refinement.
///
/// The branch keeps a lower reference point, initialized at t_FL for the
/// t1 ≤ ℓ case and at t_{k,k}^{0,ℓ} for the t1 ≥ ℓ case, and alternates:
/// a bound step (largest root of the two-sided count equation over the
/// nonpositive-tail class) and an s step (largest root of the margin equation
/// over repeated-zero A-class members, the reference replaced by the current
/// bound). The f(ℓ) terms are deleted in the t1 ≥ ℓ case.
fn refine_branch<S: Real>(
    ctx: &BranchContext<S>,
    j: u64,
    case: TailCase,
    cfg: &Config,
) -> BranchOutcome {
    let (n, k) = (ctx.n, ctx.k);
    let m = ctx.m_points;
    let below = case == TailCase::BelowEll;
    let entry = if below { ctx.t_fl } else { ctx.t_star };
    let g_lo = if below { -S::one() } else { ctx.ell };
    let iter_tol = S::of(cfg.iter_tol);
    let m_s = S::of_usize(m as usize);
    let j_s = S::of_usize(j as usize);

    // Largest root of (j+1) f(t) = f_0 M - [f(ℓ)] - (m-j) f(ref) over the
    // repeated-zero family f = (t-α)^{2k}, minimized in α. Closed form for the
    // root: α + (c/(j+1))^{1/(2k)} since f is monotone right of α.
    let s_step = |reference: S| -> Option<(S, S)> {
        let objective = |alpha: S| -> S {
            let base = Polynomial::from_roots(&vec![alpha; k]);
            let f = base.squared();
            let f0m = ctx.f0_of(&f) * ctx.cardinality;
            let f_ell = if below { f.eval(ctx.ell) } else { S::zero() };
            if !(f0m < f_ell + (m_s + S::one()) * f.eval(ctx.t_fl)) {
                return S::infinity();
            }
            let c = f0m - f_ell - (m_s - j_s) * f.eval(reference);
            if c < S::zero() {
                return S::infinity();
            }
            let root = alpha
                + (c / (j_s + S::one())).powf(S::one() / S::of_usize(2 * k));
            root
        };
        let (alpha, s) = minimize_grid_1d(objective, ctx.ell, ctx.t_fl, 400);
        if s.is_finite() {
            Some((alpha, s))
        } else {
            None
        }
    };

    // Largest root of j g(jref) + (m-j) g(t) = g_0 M over the class
    // (t - g_lo) B²(t) (t - s), B zeros free in [g_lo, s]^{k-1}; maximized.
    // +inf return marks an unsatisfiable equation (infeasibility signal).
    let bound_step = |s: S, jref: S, warm: Option<&[S]>| -> (S, Vec<S>) {
        let objective = |zeros: &[S]| -> S {
            let b2 = Polynomial::from_roots(zeros).squared();
            let g = &(&Polynomial::from_coeffs(vec![-g_lo, S::one()]) * &b2)
                * &Polynomial::from_coeffs(vec![-s, S::one()]);
            let g0m = ctx.f0_of(&g) * ctx.cardinality;
            let g_jref = g.eval(jref);
            let phi = |t: S| j_s * g_jref + (m_s - j_s) * g.eval(t) - g0m;
            if phi(S::one()) < S::zero() {
                return -S::infinity(); // unsatisfiable: nonexistence signal
            }
            match largest_root(phi, ctx.ell, S::one(), cfg.root_scan_cells, S::of(cfg.bisect_tol)) {
                Some(r) if r > s => -r,
                _ => -entry,
            }
        };
        if k == 2 {
            // single free zero: a dense grid is cheap and robust to the
            // multimodal root landscape
            let (beta, neg) = minimize_grid_1d(|b| objective(&[b]), g_lo, s, 400);
            (-neg, vec![beta])
        } else {
            let lo = vec![g_lo; k - 1];
            let hi = vec![s; k - 1];
            let (zeros, neg) =
                minimize_box(objective, &lo, &hi, cfg.starts_per_dim, cfg.optimizer_budget, warm);
            (-neg, zeros)
        }
    };

    let mut reference = entry;
    let mut bound = entry;
    let mut s_cur = S::nan();
    let mut warm: Option<Vec<S>> = None;
    let mut trace = Vec::new();
    let mut status = BranchStatus::IterationLimit;
    let mut iterations = 0;

    for it in 0..cfg.max_iterations {
        iterations = it + 1;
        let prev_bound = bound;
        let prev_s = s_cur;
        match s_step(reference) {
            Some((_alpha, s)) if s < ctx.t_fl => {
                s_cur = s;
            }
            _ => {
                // No admissible refinement of s at this reference: the bound
                // can no longer move. Converged at the current value.
                status = BranchStatus::Converged;
                break;
            }
        }
        let jref = if below { ctx.t_fl } else { reference };
        let (raw, zeros) = bound_step(s_cur, jref, warm.as_deref());
        if raw == S::infinity() {
            status = BranchStatus::Infeasible;
            trace.push(IterationRecord {
                iteration: it,
                s: s_cur.as_f64(),
                bound_raw: f64::INFINITY,
                bound_best: bound.as_f64(),
            });
            break;
        }
        warm = Some(zeros);
        if raw > bound {
            bound = raw;
        }
        reference = bound;
        trace.push(IterationRecord {
            iteration: it,
            s: s_cur.as_f64(),
            bound_raw: raw.as_f64(),
            bound_best: bound.as_f64(),
        });
        let ds = if prev_s.is_nan() { S::infinity() } else { (s_cur - prev_s).abs() };
        if ds < iter_tol && (bound - prev_bound).abs() < iter_tol {
            status = BranchStatus::Converged;
            break;
        }
    }

    // n is the guaranteed multiplicity at the top; silence the unused warning
    // on builds where the assert compiles out.
    debug_assert!(m >= n as u64);

    BranchOutcome {
        case,
        j,
        s: s_cur.as_f64(),
        bound: bound.as_f64(),
        iterations,
        status,
        trace,
    }
}

/// Full lower-bound report for an even-strength design hypothesis.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundReport {
    pub dimension: usize,
    pub strength: usize,
    pub cardinality: u64,
    pub ell: f64,
    pub t_fl: f64,
    /// Largest adjacent-system zero t_{k,k}^{0,ℓ} (valid when ℓ ≤ t_1(y)).
    pub t_kk_adjacent: f64,
    pub adjacent_strict: bool,
    pub m_c: u64,
    pub m_c_clamped: bool,
    pub x_min: f64,
    pub branches: Vec<BranchOutcome>,
    /// min over feasible branches; `None` when every branch signalled
    /// infeasibility (a nonexistence indication).
    pub worst_case_bound: Option<f64>,
}

/// Run every (case, j) branch and take the worst case.
pub fn combined_lower_bound<S: Real>(
    spec: &DesignSpec,
    ell: S,
    cfg: &Config,
) -> Result<LowerBoundReport, LowerBoundError> {
    if !spec.is_even_strength() {
        return Err(LowerBoundError::OddStrength(spec.strength()));
    }
    let n = spec.dimension;
    let k = spec.k;
    let t_fl = fl_bound::<S>(n, spec.strength());
    let system = AdjacentSystem::with_tolerances(
        n,
        k,
        ell,
        S::of(cfg.bisect_tol),
        cfg.adjacent_scan_cells,
    )?;
    let t_star = system.largest_zero();
    let mc = compute_mc(spec, ell, cfg)?;

    let ctx = BranchContext {
        n,
        k,
        m_points: mc.m,
        ell,
        t_fl,
        t_star,
        cardinality: S::of_usize(spec.cardinality as usize),
    };

    let jobs: Vec<(TailCase, u64)> = [TailCase::BelowEll, TailCase::AboveEll]
        .into_iter()
        .flat_map(|case| (0..=(mc.m - n as u64)).map(move |j| (case, j)))
        .collect();
    let branches: Vec<BranchOutcome> = jobs
        .par_iter()
        .map(|&(case, j)| refine_branch(&ctx, j, case, cfg))
        .collect();

    let worst = branches
        .iter()
        .filter(|b| b.status != BranchStatus::Infeasible)
        .map(|b| b.bound)
        .fold(f64::INFINITY, f64::min);
    let worst_case_bound = if worst.is_finite() { Some(worst) } else { None };

    Ok(LowerBoundReport {
        dimension: n,
        strength: spec.strength(),
        cardinality: spec.cardinality,
        ell: ell.as_f64(),
        t_fl: t_fl.as_f64(),
        t_kk_adjacent: t_star.as_f64(),
        adjacent_strict: system.is_strict(),
        m_c: mc.m,
        m_c_clamped: mc.clamped,
        x_min: mc.x_min,
        branches,
        worst_case_bound,
    })
}
