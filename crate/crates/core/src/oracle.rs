//! Desk-scale ground truth: explicit point sets of known strength, strength
//! verification through the design identity, and direct covering-radius
//! measurement by candidate enumeration plus randomized local descent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::config::Config;
use crate::orthopoly::measure_moment;
use crate::scalar::Real;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("unknown builtin design name: {0}")]
    UnknownDesign(String),
    #[error("point {index} has norm {norm}, not unit")]
    NotUnitNorm { index: usize, norm: f64 },
    #[error("antipodal flag set but point {0} has no antipode in the set")]
    MissingAntipode(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Finite subset of the unit sphere.
#[derive(Clone, Debug)]
pub struct PointSet<S> {
    dimension: usize,
    points: Vec<Vec<S>>,
    antipodal: bool,
}

fn dot<S: Real>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (&x, &y)| acc + x * y)
}

fn norm<S: Real>(a: &[S]) -> S {
    dot(a, a).sqrt()
}

impl<S: Real> PointSet<S> {
    /// Validates unit norms (1e-12) and, when flagged, antipodal closure.
    pub fn new(dimension: usize, points: Vec<Vec<S>>, antipodal: bool) -> Result<Self, OracleError> {
        let tol = S::of(1e-12);
        for (i, p) in points.iter().enumerate() {
            assert_eq!(p.len(), dimension, "point {} has wrong dimension", i);
            let nrm = norm(p);
            if (nrm - S::one()).abs() > tol {
                return Err(OracleError::NotUnitNorm { index: i, norm: nrm.as_f64() });
            }
        }
        if antipodal {
            for (i, p) in points.iter().enumerate() {
                let found = points.iter().any(|q| {
                    p.iter().zip(q).all(|(&a, &b)| (a + b).abs() <= tol)
                });
                if !found {
                    return Err(OracleError::MissingAntipode(i));
                }
            }
        }
        Ok(Self { dimension, points, antipodal })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_antipodal(&self) -> bool {
        self.antipodal
    }

    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    /// Plain text format: first line "n m", then m rows of n coordinates.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.dimension, self.points.len());
        for p in &self.points {
            let row: Vec<String> = p.iter().map(|c| format!("{:.17}", c.as_f64())).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the text format. Norm deviations up to 1e-9 are renormalized to
    /// unit length; larger ones are rejected.
    pub fn from_text(text: &str) -> Result<Self, OracleError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| OracleError::Parse("empty file".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| OracleError::Parse("bad dimension in header".into()))?;
        let m: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| OracleError::Parse("bad count in header".into()))?;
        let mut points = Vec::with_capacity(m);
        for (row, line) in lines.enumerate() {
            let coords: Result<Vec<S>, _> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>()
                        .map(S::of)
                        .map_err(|_| OracleError::Parse(format!("bad number in row {}", row)))
                })
                .collect();
            let coords = coords?;
            if coords.len() != n {
                return Err(OracleError::Parse(format!(
                    "row {} has {} coordinates, expected {}",
                    row,
                    coords.len(),
                    n
                )));
            }
            points.push(coords);
        }
        if points.len() != m {
            return Err(OracleError::Parse(format!(
                "expected {} points, found {}",
                m,
                points.len()
            )));
        }
        for (i, p) in points.iter_mut().enumerate() {
            let nrm = norm(p);
            if (nrm - S::one()).abs() > S::of(1e-9) {
                return Err(OracleError::NotUnitNorm { index: i, norm: nrm.as_f64() });
            }
            for c in p.iter_mut() {
                *c = *c / nrm;
            }
        }
        // detect antipodality
        let tol = S::of(1e-12);
        let antipodal = !points.is_empty()
            && points.iter().all(|p| {
                points.iter().any(|q| p.iter().zip(q).all(|(&a, &b)| (a + b).abs() <= tol))
            });
        Self::new(n, points, antipodal)
    }
}

/// Names of the built-in fixtures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinDesign {
    /// ±e_i: antipodal 3-design of 2n points.
    CrossPolytope(usize),
    /// Regular simplex: 2-design of n+1 points, pairwise inner product -1/n.
    Simplex(usize),
    /// 12-point antipodal 5-design.
    Icosahedron,
    /// 2^n vertices (±1,...,±1)/√n: antipodal 3-design.
    Cube(usize),
}

impl std::str::FromStr for BuiltinDesign {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, OracleError> {
        let s = s.trim();
        if s == "icosahedron" {
            return Ok(Self::Icosahedron);
        }
        for (prefix, ctor) in [
            ("cross-polytope", Self::CrossPolytope as fn(usize) -> Self),
            ("simplex", Self::Simplex as fn(usize) -> Self),
            ("cube", Self::Cube as fn(usize) -> Self),
        ] {
            if let Some(rest) = s.strip_prefix(prefix) {
                let inner = rest
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| OracleError::UnknownDesign(s.into()))?;
                let n: usize = inner
                    .parse()
                    .map_err(|_| OracleError::UnknownDesign(s.into()))?;
                return Ok(ctor(n));
            }
        }
        Err(OracleError::UnknownDesign(s.into()))
    }
}

/// Exact-coordinate construction of a named design.
pub fn builtin_design<S: Real>(which: BuiltinDesign) -> Result<PointSet<S>, OracleError> {
    match which {
        BuiltinDesign::CrossPolytope(n) => {
            let mut pts = Vec::with_capacity(2 * n);
            for i in 0..n {
                for sign in [S::one(), -S::one()] {
                    let mut p = vec![S::zero(); n];
                    p[i] = sign;
                    pts.push(p);
                }
            }
            PointSet::new(n, pts, true)
        }
        BuiltinDesign::Simplex(n) => {
            // Helmert frame: orthonormal rows spanning the complement of the
            // all-ones vector in R^{n+1}; columns give n+1 equiangular points.
            let mut pts = Vec::with_capacity(n + 1);
            let scale = (S::of_usize(n + 1) / S::of_usize(n)).sqrt();
            for col in 0..=n {
                let mut p = Vec::with_capacity(n);
                for row in 1..=n {
                    let denom = (S::of_usize(row) * S::of_usize(row + 1)).sqrt();
                    let v = if col < row {
                        S::one() / denom
                    } else if col == row {
                        -S::of_usize(row) / denom
                    } else {
                        S::zero()
                    };
                    p.push(v * scale);
                }
                pts.push(p);
            }
            PointSet::new(n, pts, false)
        }
        BuiltinDesign::Icosahedron => {
            let phi = S::of((1.0 + 5.0f64.sqrt()) / 2.0);
            let nrm = (S::one() + phi * phi).sqrt();
            let one = S::one();
            let mut pts = Vec::with_capacity(12);
            for (a, b) in [(one, phi), (one, -phi), (-one, phi), (-one, -phi)] {
                pts.push(vec![S::zero(), a / nrm, b / nrm]);
                pts.push(vec![a / nrm, b / nrm, S::zero()]);
                pts.push(vec![b / nrm, S::zero(), a / nrm]);
            }
            PointSet::new(3, pts, true)
        }
        BuiltinDesign::Cube(n) => {
            let scale = S::one() / S::of_usize(n).sqrt();
            let mut pts = Vec::with_capacity(1 << n);
            for mask in 0u32..(1u32 << n) {
                let p: Vec<S> = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { scale } else { -scale })
                    .collect();
                pts.push(p);
            }
            PointSet::new(n, pts, true)
        }
    }
}

/// Verdict from the strength check.
#[derive(Clone, Debug, Serialize)]
pub struct StrengthVerdict {
    pub pass: bool,
    pub worst_residual: f64,
    pub worst_degree: usize,
    pub strength_tested: usize,
}

/// Check the design identity Σ_x f(⟨x, y⟩) = f_0 |C| for f = t^d, d ≤ τ, at
/// `directions` random unit points y.
pub fn verify_strength<S: Real>(
    ps: &PointSet<S>,
    tau: usize,
    directions: usize,
    tol: f64,
    seed: u64,
) -> StrengthVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ps.dimension();
    let m = S::of_usize(ps.len());
    let mut worst = 0.0f64;
    let mut worst_degree = 0;
    for _ in 0..directions {
        let y = random_unit_vector::<S>(n, &mut rng);
        let products: Vec<S> = ps.points().iter().map(|x| dot(x, &y)).collect();
        for d in 0..=tau {
            let sum = products
                .iter()
                .fold(S::zero(), |acc, &t| acc + t.powi(d as i32));
            let expect = measure_moment::<S>(n, d) * m;
            let residual = (sum - expect).abs().as_f64();
            if residual > worst {
                worst = residual;
                worst_degree = d;
            }
        }
    }
    StrengthVerdict { pass: worst <= tol, worst_residual: worst, worst_degree, strength_tested: tau }
}

fn random_unit_vector<S: Real>(n: usize, rng: &mut impl Rng) -> Vec<S> {
    loop {
        // Box-Muller pairs give a rotation-invariant direction
        let mut v = Vec::with_capacity(n);
        while v.len() < n {
            let u1: f64 = rng.gen_range(1e-12..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            let r = (-2.0 * u1.ln()).sqrt();
            let theta = 2.0 * std::f64::consts::PI * u2;
            v.push(S::of(r * theta.cos()));
            if v.len() < n {
                v.push(S::of(r * theta.sin()));
            }
        }
        let nrm = norm(&v);
        if nrm > S::of(1e-6) {
            for c in v.iter_mut() {
                *c = *c / nrm;
            }
            return v;
        }
    }
}

/// Result of the covering measurement: ρ(C) = min_y max_x ⟨x, y⟩.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringMeasurement {
    /// Upper estimate of ρ(C); exact for the built-in symmetric sets.
    pub rho: f64,
    pub deep_hole: Vec<f64>,
    /// Points attaining max ⟨x, y⟩ within 1e-6 at the minimizing y.
    pub attaining: usize,
}

/// Deterministic facet-candidate enumeration plus seeded random-restart
/// coordinate descent.
pub fn measure_covering<S: Real>(ps: &PointSet<S>, cfg: &Config) -> CoveringMeasurement {
    let n = ps.dimension();
    let height = |y: &[S]| -> S {
        ps.points()
            .iter()
            .map(|x| dot(x, y))
            .fold(-S::infinity(), |a, b| if b > a { b } else { a })
    };

    let mut best_y: Option<Vec<S>> = None;
    let mut best_v = S::infinity();

    // circumcenter candidates from n-subsets, when the subset count is sane
    let m = ps.len();
    if binom_small(m, n) <= 2_000_000 {
        let mut subset: Vec<usize> = (0..n).collect();
        loop {
            if let Some(y) = facet_candidate(ps, &subset) {
                for cand in [y.clone(), y.iter().map(|&c| -c).collect::<Vec<S>>()] {
                    let v = height(&cand);
                    if v < best_v {
                        best_v = v;
                        best_y = Some(cand);
                    }
                }
            }
            // next combination
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if subset[i] != i + m - n {
                    subset[i] += 1;
                    for j in i + 1..n {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
            if subset[0] == m - n && (0..n).all(|i| subset[i] == i + m - n) {
                break;
            }
            if i == 0 && subset[0] == m - n {
                break;
            }
        }
    }

    // random-restart projected coordinate descent
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let starts: Vec<Vec<S>> = (0..cfg.covering_restarts)
        .map(|_| random_unit_vector::<S>(n, &mut rng))
        .collect();
    let tol = S::of(cfg.covering_tol);
    let descended: Vec<(Vec<S>, S)> = starts
        .into_par_iter()
        .map(|start| {
            let y = coordinate_descent(ps, start, tol);
            let v = height(&y);
            (y, v)
        })
        .collect();
    for (y, v) in descended {
        if v < best_v {
            best_v = v;
            best_y = Some(y);
        }
    }

    let y = best_y.expect("at least one candidate");
    let attain_tol = S::of(1e-6);
    let attaining = ps
        .points()
        .iter()
        .filter(|x| (dot(x, &y) - best_v).abs() <= attain_tol)
        .count();
    CoveringMeasurement {
        rho: best_v.as_f64(),
        deep_hole: y.iter().map(|c| c.as_f64()).collect(),
        attaining,
    }
}

fn binom_small(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
        if acc > 10_000_000 {
            return acc;
        }
    }
    acc
}

/// Solve ⟨x_i, y⟩ = 1 for the subset, normalize. `None` for singular systems.
fn facet_candidate<S: Real>(ps: &PointSet<S>, subset: &[usize]) -> Option<Vec<S>> {
    let n = ps.dimension();
    let mut a: Vec<Vec<S>> = subset.iter().map(|&i| ps.points()[i].clone()).collect();
    let mut b = vec![S::one(); n];
    // Gaussian elimination with partial pivoting
    for col in 0..n {
        let mut piv = col;
        for row in col + 1..n {
            if a[row][col].abs() > a[piv][col].abs() {
                piv = row;
            }
        }
        if a[piv][col].abs() < S::of(1e-10) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for c in col..n {
                let v = a[col][c];
                a[row][c] = a[row][c] - factor * v;
            }
            let bv = b[col];
            b[row] = b[row] - factor * bv;
        }
    }
    let mut y = vec![S::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in row + 1..n {
            acc = acc - a[row][c] * y[c];
        }
        y[row] = acc / a[row][row];
    }
    let nrm = norm(&y);
    if nrm < S::of(1e-10) {
        return None;
    }
    Some(y.into_iter().map(|c| c / nrm).collect())
}

fn coordinate_descent<S: Real>(ps: &PointSet<S>, mut y: Vec<S>, tol: S) -> Vec<S> {
    let n = ps.dimension();
    let height = |y: &[S]| -> S {
        ps.points()
            .iter()
            .map(|x| dot(x, y))
            .fold(-S::infinity(), |a, b| if b > a { b } else { a })
    };
    let mut step = S::of(0.1);
    let mut value = height(&y);
    while step > tol {
        let mut improved = false;
        for i in 0..n {
            for dir in [S::one(), -S::one()] {
                let mut cand = y.clone();
                cand[i] = cand[i] + dir * step;
                let nrm = norm(&cand);
                if nrm < S::of(1e-9) {
                    continue;
                }
                for c in cand.iter_mut() {
                    *c = *c / nrm;
                }
                let v = height(&cand);
                if v < value {
                    value = v;
                    y = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step = step * S::of(0.5);
        }
    }
    y
}
