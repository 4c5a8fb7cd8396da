//! Upper bounds on ρ(C): the generic positive-increasing-polynomial bound,
//! the closed-form optimum for strength 4, the antipodal strength-3/5
//! formulas, and a derivative-free search over the admissible form.

use serde::Serialize;
use thiserror::Error;

use crate::config::Config;
use crate::lowerbound::fl_bound;
use crate::optimize::minimize_box;
use crate::orthopoly::gegenbauer_f0;
use crate::poly::Polynomial;
use crate::roots::largest_root;
use crate::scalar::Real;

#[derive(Debug, Error)]
pub enum UpperBoundError {
    #[error("polynomial degree {degree} exceeds strength {tau}")]
    DegreeExceedsStrength { degree: usize, tau: usize },
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("the defining equation has no root in [t_FL, 2]")]
    NoRoot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UpperBoundMethod {
    LinearProgramming,
    OptimalStrength4,
    Antipodal3,
    Antipodal5,
    FormSearch,
}

/// Upper bound with provenance; radius r = √(2(1-ρ)).
#[derive(Clone, Debug, Serialize)]
pub struct UpperBoundResult {
    pub bound: f64,
    pub method: UpperBoundMethod,
    pub poly_coeffs: Vec<f64>,
    /// (a, b) for the strength-4 closed form, the antipodal-5 `a`, when
    /// applicable.
    pub params: Option<(f64, f64)>,
    pub radius: f64,
    pub t_fl: f64,
    pub clamped: bool,
}

impl UpperBoundResult {
    fn assemble<S: Real>(
        bound: S,
        method: UpperBoundMethod,
        poly: &Polynomial<S>,
        params: Option<(f64, f64)>,
        t_fl: S,
        clamped: bool,
    ) -> Self {
        let b = bound.as_f64();
        Self {
            bound: b,
            method,
            poly_coeffs: poly.coeffs().iter().map(|c| c.as_f64()).collect(),
            params,
            radius: rho_to_radius(b),
            t_fl: t_fl.as_f64(),
            clamped,
        }
    }
}

/// ρ → r conversion.
pub fn rho_to_radius(rho: f64) -> f64 {
    (2.0 * (1.0 - rho)).sqrt()
}

/// r → ρ conversion.
pub fn radius_to_rho(r: f64) -> f64 {
    1.0 - r * r / 2.0
}

fn certify_shape<S: Real>(
    f: &Polynomial<S>,
    t_fl: S,
    grid_cells: usize,
) -> Result<(), UpperBoundError> {
    let df = f.derivative();
    for i in 0..=grid_cells {
        let t = -S::one() + (t_fl + S::one()) * S::of_usize(i) / S::of_usize(grid_cells.max(1));
        if f.eval(t) < -S::of(1e-11) {
            return Err(UpperBoundError::CertificationFailed(format!(
                "negative on [-1, t_FL] at t = {}",
                t
            )));
        }
    }
    for i in 0..=grid_cells {
        let t = t_fl + (S::one() - t_fl) * S::of_usize(i) / S::of_usize(grid_cells.max(1));
        if df.eval(t) < -S::of(1e-9) {
            return Err(UpperBoundError::CertificationFailed(format!(
                "not increasing on [t_FL, 1] at t = {}",
                t
            )));
        }
    }
    Ok(())
}

fn solve_bound_equation<S: Real>(
    f: &Polynomial<S>,
    factor: S,
    f0m: S,
    t_fl: S,
    cfg: &Config,
) -> Result<(S, bool), UpperBoundError> {
    let phi = |t: S| factor * f.eval(t) - f0m;
    let hi = S::of(2.0);
    match largest_root(phi, t_fl, hi, cfg.root_scan_cells, S::of(cfg.bisect_tol)) {
        Some(r) if r <= S::one() => Ok((r, false)),
        Some(_) => Ok((S::one(), true)),
        None => {
            if phi(t_fl) > S::zero() {
                // already above the level at t_FL: the bound degenerates to t_FL
                Ok((t_fl, false))
            } else {
                Err(UpperBoundError::NoRoot)
            }
        }
    }
}

/// Generic bound: for f ≥ 0 on [-1, t_FL] and increasing on [t_FL, 1],
/// ρ(C) ≤ largest root of n f(t) = f_0 |C| (2n f(t) = f_0 |C| antipodal).
pub fn lp_upper_bound<S: Real>(
    n: usize,
    tau: usize,
    cardinality: u64,
    f: &Polynomial<S>,
    antipodal: bool,
    cfg: &Config,
) -> Result<UpperBoundResult, UpperBoundError> {
    if f.degree() > tau {
        return Err(UpperBoundError::DegreeExceedsStrength { degree: f.degree(), tau });
    }
    if antipodal {
        // the doubled count at ±ρ needs f(ρ) = f(-ρ)
        let odd = f
            .coeffs()
            .iter()
            .skip(1)
            .step_by(2)
            .any(|c| c.abs() > S::of(1e-12));
        if odd {
            return Err(UpperBoundError::Precondition(
                "antipodal mode requires an even polynomial".into(),
            ));
        }
    }
    let t_fl = fl_bound::<S>(n, tau);
    certify_shape(f, t_fl, cfg.shape_grid_cells)?;
    let factor = if antipodal { S::of_usize(2 * n) } else { S::of_usize(n) };
    let f0m = gegenbauer_f0(n, f) * S::of_usize(cardinality as usize);
    let (root, clamped) = solve_bound_equation(f, factor, f0m, t_fl, cfg)?;
    Ok(UpperBoundResult::assemble(
        root,
        UpperBoundMethod::LinearProgramming,
        f,
        None,
        t_fl,
        clamped,
    ))
}

/// Closed-form optimal bound for strength-4 designs, f = (t² + at + b)².
pub fn optimal_upper_4design(n: usize, cardinality: u64) -> Result<UpperBoundResult, UpperBoundError> {
    let nf = n as f64;
    let m = cardinality as f64;
    if cardinality < 2 * n as u64 + 1 {
        return Err(UpperBoundError::Precondition(format!(
            "cardinality {} <= 2n = {}",
            cardinality,
            2 * n
        )));
    }
    let radicand = nf * (nf - 1.0) * (2.0 * (nf + 2.0) * m - 3.0 * nf * (nf + 3.0));
    if radicand <= 0.0 {
        return Err(UpperBoundError::Precondition("radicand not positive".into()));
    }
    let b0 = (3.0 * nf * (nf + 1.0) - (nf + 2.0) * m + radicand.sqrt())
        / (nf * (nf + 2.0) * (m - 2.0 * nf));
    let a0 = (nf * b0 + 1.0) / nf
        * ((m * (nf * b0 + 1.0) - nf * nf * b0) / (nf * b0 + 2.0)).sqrt();

    let u = |a: f64, b: f64| -> f64 {
        let f0 = b * b + (a * a + 2.0 * b) / nf + 3.0 / (nf * (nf + 2.0));
        -a / 2.0 + 0.5 * (a * a - 4.0 * b + 4.0 * (m / nf * f0).sqrt()).sqrt()
    };
    let bound = u(a0, b0);

    // stationarity of the minimized surface at (a0, b0)
    let h = 1e-5;
    let du_da = (u(a0 + h, b0) - u(a0 - h, b0)) / (2.0 * h);
    let du_db = (u(a0, b0 + h) - u(a0, b0 - h)) / (2.0 * h);
    if du_da.abs().max(du_db.abs()) > 1e-6 {
        return Err(UpperBoundError::CertificationFailed(format!(
            "gradient at (a0, b0) is ({}, {})",
            du_da, du_db
        )));
    }

    // agreement with the generic route on the same polynomial
    let f = Polynomial::<f64>::from_coeffs(vec![b0, a0, 1.0]).squared();
    let cfg = Config::default();
    let generic = lp_upper_bound(n, 4, cardinality, &f, false, &cfg)?;
    let clamped = bound > 1.0;
    if clamped {
        if !generic.clamped {
            return Err(UpperBoundError::CertificationFailed(format!(
                "closed form {} exceeds 1 but the equation root {} does not",
                bound, generic.bound
            )));
        }
    } else if (generic.bound - bound).abs() > 1e-10 {
        return Err(UpperBoundError::CertificationFailed(format!(
            "closed form {} vs equation root {}",
            bound, generic.bound
        )));
    }

    let t_fl = fl_bound::<f64>(n, 4);
    let bound = bound.min(1.0);
    Ok(UpperBoundResult {
        bound,
        method: UpperBoundMethod::OptimalStrength4,
        poly_coeffs: f.coeffs().to_vec(),
        params: Some((a0, b0)),
        radius: rho_to_radius(bound),
        t_fl,
        clamped,
    })
}

/// Antipodal strength-3 bound (1/n)√(|C|/2), with t_FL = 1/√n.
pub fn antipodal_3_upper(n: usize, cardinality: u64) -> Result<UpperBoundResult, UpperBoundError> {
    if cardinality % 2 != 0 {
        return Err(UpperBoundError::Precondition("antipodal designs have even cardinality".into()));
    }
    if cardinality < 2 * n as u64 {
        return Err(UpperBoundError::Precondition(format!(
            "cardinality {} < 2n = {}",
            cardinality,
            2 * n
        )));
    }
    let nf = n as f64;
    let bound = (cardinality as f64 / 2.0).sqrt() / nf;
    let f = Polynomial::<f64>::from_coeffs(vec![0.0, 0.0, 1.0]);
    let t_fl = 1.0 / nf.sqrt();
    Ok(UpperBoundResult {
        bound,
        method: UpperBoundMethod::Antipodal3,
        poly_coeffs: f.coeffs().to_vec(),
        params: None,
        radius: rho_to_radius(bound),
        t_fl,
        clamped: false,
    })
}

/// Antipodal strength-5 bound
/// (1/n + (1/n)√((n-1)(|C|-2n)/(n(n+2))))^{1/2}, f = (t² - a)².
pub fn antipodal_5_upper(n: usize, cardinality: u64) -> Result<UpperBoundResult, UpperBoundError> {
    if cardinality % 2 != 0 {
        return Err(UpperBoundError::Precondition("antipodal designs have even cardinality".into()));
    }
    if cardinality <= 2 * n as u64 {
        return Err(UpperBoundError::Precondition(format!(
            "cardinality {} <= 2n = {} (the cross-polytope case is strength 3)",
            cardinality,
            2 * n
        )));
    }
    let nf = n as f64;
    let m = cardinality as f64;
    let bound =
        (1.0 / nf + ((nf - 1.0) * (m - 2.0 * nf) / (nf * (nf + 2.0))).sqrt() / nf).sqrt();
    let t_fl = (3.0 / (nf + 2.0)).sqrt();

    let a = 1.0 / nf - 2.0 * ((nf - 1.0) / (nf * (nf + 2.0) * (m - 2.0 * nf))).sqrt();
    if !(-t_fl..=t_fl).contains(&a) {
        return Err(UpperBoundError::CertificationFailed(format!(
            "optimal a = {} outside [-t_FL, t_FL]",
            a
        )));
    }
    // internal consistency: the intermediate inequality at the stated a
    // reproduces the closed form
    let f0 = a * a - 2.0 * a / nf + 3.0 / (nf * (nf + 2.0));
    let reconstructed = (a + (m * f0 / (2.0 * nf)).sqrt()).sqrt();
    if (reconstructed - bound).abs() > 1e-12 {
        return Err(UpperBoundError::CertificationFailed(format!(
            "closed form {} vs reconstruction {}",
            bound, reconstructed
        )));
    }

    let f = Polynomial::<f64>::from_coeffs(vec![-a, 0.0, 1.0]).squared();
    Ok(UpperBoundResult {
        bound,
        method: UpperBoundMethod::Antipodal5,
        poly_coeffs: f.coeffs().to_vec(),
        params: Some((a, 0.0)),
        radius: rho_to_radius(bound),
        t_fl,
        clamped: false,
    })
}

/// Search over f = (t+1)^e A²(t), τ = 2k - e, A's k-e zeros in [-1, t_FL],
/// minimizing the generic bound.
pub fn search_upper_bound<S: Real>(
    n: usize,
    tau: usize,
    cardinality: u64,
    antipodal: bool,
    cfg: &Config,
) -> Result<UpperBoundResult, UpperBoundError> {
    assert!(tau >= 2);
    if antipodal && tau % 2 == 1 {
        return search_upper_bound_antipodal_odd::<S>(n, tau, cardinality, cfg);
    }
    let e = tau % 2; // tau = 2k - e
    let k = (tau + e) / 2;
    let free = k - e;
    let t_fl = fl_bound::<S>(n, tau);
    let factor = S::of_usize(n);
    let card = S::of_usize(cardinality as usize);

    let build = |zeros: &[S]| -> Polynomial<S> {
        let a2 = Polynomial::from_roots(zeros).squared();
        if e == 1 {
            &Polynomial::from_coeffs(vec![S::one(), S::one()]) * &a2
        } else {
            a2
        }
    };
    let objective = |zeros: &[S]| -> S {
        let f = build(zeros);
        let f0m = gegenbauer_f0(n, &f) * card;
        match solve_bound_equation(&f, factor, f0m, t_fl, cfg) {
            Ok((root, _)) => root,
            Err(_) => S::infinity(),
        }
    };
    let lo = vec![-S::one(); free];
    let hi = vec![t_fl; free];
    let (zeros, best) =
        minimize_box(objective, &lo, &hi, cfg.starts_per_dim, cfg.optimizer_budget, None);
    if !best.is_finite() {
        return Err(UpperBoundError::NoRoot);
    }
    let f = build(&zeros);
    // final certificate through the public route
    let mut result = lp_upper_bound(n, tau, cardinality, &f, false, cfg)?;
    result.method = UpperBoundMethod::FormSearch;
    Ok(result)
}

/// Antipodal odd strengths use even polynomials with the doubled point count:
/// f = Π (t² - a_j)² for τ = 2κ-1 ≥ 5, and f = t² - a (a ≤ 0) for τ = 3.
fn search_upper_bound_antipodal_odd<S: Real>(
    n: usize,
    tau: usize,
    cardinality: u64,
    cfg: &Config,
) -> Result<UpperBoundResult, UpperBoundError> {
    let t_fl = fl_bound::<S>(n, tau);
    let factor = S::of_usize(2 * n);
    let card = S::of_usize(cardinality as usize);
    let kappa = (tau + 1) / 2;

    let build = |params: &[S]| -> Polynomial<S> {
        if tau == 3 {
            Polynomial::from_coeffs(vec![-params[0], S::zero(), S::one()])
        } else {
            let mut acc = Polynomial::constant(S::one());
            for &a in params {
                acc = &acc * &Polynomial::from_coeffs(vec![-a, S::zero(), S::one()]);
            }
            acc.squared()
        }
    };
    let objective = |params: &[S]| -> S {
        let f = build(params);
        if certify_shape(&f, t_fl, cfg.shape_grid_cells / 10).is_err() {
            return S::infinity();
        }
        let f0m = gegenbauer_f0(n, &f) * card;
        match solve_bound_equation(&f, factor, f0m, t_fl, cfg) {
            Ok((root, _)) => root,
            Err(_) => S::infinity(),
        }
    };
    let free = if tau == 3 { 1 } else { kappa - 1 };
    let lo = vec![-S::one(); free];
    let hi = if tau == 3 { vec![S::zero(); free] } else { vec![t_fl * t_fl; free] };
    let (params, best) =
        minimize_box(objective, &lo, &hi, cfg.starts_per_dim, cfg.optimizer_budget, None);
    if !best.is_finite() {
        return Err(UpperBoundError::NoRoot);
    }
    let f = build(&params);
    let mut result = lp_upper_bound(n, tau, cardinality, &f, true, cfg)?;
    result.method = UpperBoundMethod::FormSearch;
    Ok(result)
}
