//! Adjacent polynomial system for the signed measure dμ_ℓ = c_{n,ℓ}(t-ℓ)dμ,
//! c_{n,ℓ} = -1/ℓ, with ℓ ∈ (-1, 0).
//!
//! The polynomials P_i^{0,ℓ} are orthogonal against dμ_ℓ, normalized to 1 at
//! t = 1, and evaluated through the Christoffel-Darboux kernel
//! T_i(u, v) = Σ_{j≤i} r_j P_j(u) P_j(v):  P_i^{0,ℓ}(t) = T_i(t, ℓ)/T_i(1, ℓ).

use serde::Serialize;
use thiserror::Error;

use crate::orthopoly::{GegenbauerBasis, OrthoError};
use crate::poly::Polynomial;
use crate::roots::{all_roots, bisect};
use crate::scalar::Real;

#[derive(Debug, Error)]
pub enum AdjacentError {
    #[error(transparent)]
    Ortho(#[from] OrthoError),
    #[error("ell rejected: {0}")]
    InvalidEll(String),
    #[error("system failed a posteriori certification: {0}")]
    CertificationFailed(String),
}

/// Signed measure parameters; requires ℓ ∈ (-1, 0) so that c_{n,ℓ} = -1/ℓ > 0.
#[derive(Clone, Copy, Debug)]
pub struct SignedMeasureParams<S> {
    pub dimension: usize,
    pub ell: S,
}

impl<S: Real> SignedMeasureParams<S> {
    pub fn new(dimension: usize, ell: S) -> Result<Self, AdjacentError> {
        if !(ell > -S::one() && ell < S::zero()) {
            return Err(AdjacentError::InvalidEll(format!(
                "ell = {} outside (-1, 0)",
                ell
            )));
        }
        Ok(Self { dimension, ell })
    }

    pub fn scale_constant(&self) -> S {
        -S::one() / self.ell
    }
}

/// Which hypothesis regime an ℓ falls into for a given (n, k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EllVerdict {
    /// t_{k+1,1} < ℓ < t_{k,1} and P_{k+1}(ℓ)/P_k(ℓ) < 1.
    Strict,
    /// ℓ ∈ (-1, t_{k,1}) outside the strict window; the construction is
    /// accepted only after a posteriori certification.
    Relaxed,
    /// ℓ outside (-1, t_{k,1}); the signed-measure construction is refused.
    Rejected,
}

/// validate_ell outcome with the violated condition spelled out.
#[derive(Clone, Debug, Serialize)]
pub struct EllValidation {
    pub verdict: EllVerdict,
    pub detail: String,
}

/// Check ℓ against the interlacing-theorem hypotheses for order k.
pub fn validate_ell<S: Real>(n: usize, k: usize, ell: S) -> Result<EllValidation, AdjacentError> {
    let basis = GegenbauerBasis::<S>::new(n, k + 1)?;
    Ok(classify_ell(&basis, k, ell))
}

fn classify_ell<S: Real>(basis: &GegenbauerBasis<S>, k: usize, ell: S) -> EllValidation {
    if !(ell > -S::one() && ell < S::zero()) {
        return EllValidation {
            verdict: EllVerdict::Rejected,
            detail: format!("ell = {} outside (-1, 0)", ell),
        };
    }
    let t_k1 = basis.zeros(k).expect("cached")[0];
    let t_k1_next = basis.zeros(k + 1).expect("cached")[0];
    if ell >= t_k1 {
        return EllValidation {
            verdict: EllVerdict::Rejected,
            detail: format!("ell = {} >= t_{{k,1}} = {}", ell, t_k1),
        };
    }
    let ratio = basis.eval(k + 1, ell).expect("cached") / basis.eval(k, ell).expect("cached");
    if ell > t_k1_next && ratio < S::one() {
        EllValidation { verdict: EllVerdict::Strict, detail: String::new() }
    } else if ell <= t_k1_next {
        EllValidation {
            verdict: EllVerdict::Relaxed,
            detail: format!("ell = {} <= t_{{k+1,1}} = {}", ell, t_k1_next),
        }
    } else {
        EllValidation {
            verdict: EllVerdict::Relaxed,
            detail: format!("P_{{k+1}}(ell)/P_k(ell) = {} >= 1", ratio),
        }
    }
}

/// The system P_i^{0,ℓ}, i = 0..k, with its zeros and quadrature rule.
#[derive(Clone, Debug)]
pub struct AdjacentSystem<S> {
    params: SignedMeasureParams<S>,
    order: usize,
    basis: GegenbauerBasis<S>,
    validation: EllValidation,
    /// P_j^{(n)}(ℓ) for j = 0..k+1.
    p_at_ell: Vec<S>,
    /// Zeros of P_k^{0,ℓ}, ascending.
    zeros_top: Vec<S>,
    /// Leading coefficients m_i^{0,ℓ}, i = 0..k.
    leading: Vec<S>,
    zero_tol: S,
    scan_cells: usize,
}

impl<S: Real> AdjacentSystem<S> {
    pub fn new(n: usize, k: usize, ell: S) -> Result<Self, AdjacentError> {
        Self::with_tolerances(n, k, ell, S::of(1e-12), 10_000)
    }

    pub fn with_tolerances(
        n: usize,
        k: usize,
        ell: S,
        zero_tol: S,
        scan_cells: usize,
    ) -> Result<Self, AdjacentError> {
        let params = SignedMeasureParams::new(n, ell)?;
        let basis = GegenbauerBasis::<S>::with_zero_tolerance(n, k + 1, zero_tol)?;
        let validation = classify_ell(&basis, k, ell);
        if validation.verdict == EllVerdict::Rejected {
            return Err(AdjacentError::InvalidEll(validation.detail));
        }
        let p_at_ell = (0..=k + 1)
            .map(|j| basis.eval(j, ell).expect("cached"))
            .collect::<Vec<_>>();

        let mut system = Self {
            params,
            order: k,
            basis,
            validation,
            p_at_ell,
            zeros_top: Vec::new(),
            leading: Vec::new(),
            zero_tol,
            scan_cells,
        };
        system.leading = (0..=k).map(|i| system.leading_coefficient(i)).collect();
        system.zeros_top = system.locate_top_zeros()?;
        system.certify()?;
        Ok(system)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ell(&self) -> S {
        self.params.ell
    }

    pub fn dimension(&self) -> usize {
        self.params.dimension
    }

    pub fn basis(&self) -> &GegenbauerBasis<S> {
        &self.basis
    }

    pub fn validation(&self) -> &EllValidation {
        &self.validation
    }

    pub fn is_strict(&self) -> bool {
        self.validation.verdict == EllVerdict::Strict
    }

    /// Christoffel-Darboux kernel T_i(t, ℓ).
    fn kernel(&self, i: usize, t: S) -> S {
        let mut acc = S::zero();
        for j in 0..=i {
            let r = self.basis.norm_constant(j).expect("cached");
            acc = acc + r * self.p_at_ell[j] * self.basis.eval(j, t).expect("cached");
        }
        acc
    }

    /// P_i^{0,ℓ}(t) via the kernel form (well defined at t = ℓ).
    pub fn eval(&self, i: usize, t: S) -> S {
        self.kernel(i, t) / self.kernel(i, S::one())
    }

    /// The ratio closed form
    /// (1-ℓ)(P_{i+1}(t) - P_i(t)·R) / ((t-ℓ)(1-R)), R = P_{i+1}(ℓ)/P_i(ℓ).
    /// `None` at the removable singularity t = ℓ.
    pub fn eval_ratio_form(&self, i: usize, t: S) -> Option<S> {
        if t == self.params.ell {
            return None;
        }
        let ell = self.params.ell;
        let ratio = self.p_at_ell[i + 1] / self.p_at_ell[i];
        let num = (S::one() - ell)
            * (self.basis.eval(i + 1, t).expect("cached")
                - self.basis.eval(i, t).expect("cached") * ratio);
        Some(num / ((t - ell) * (S::one() - ratio)))
    }

    /// Monomial form of P_i^{0,ℓ} (for moment integration only).
    pub fn monomial(&self, i: usize) -> Polynomial<S> {
        let mut acc = Polynomial::zero();
        for j in 0..=i {
            let r = self.basis.norm_constant(j).expect("cached");
            acc = &acc + &self.basis.monomial(j).expect("cached").scale(r * self.p_at_ell[j]);
        }
        acc.scale(S::one() / self.kernel(i, S::one()))
    }

    /// Leading coefficient m_i^{0,ℓ} = r_i m_i P_i(ℓ) / T_i(1, ℓ).
    fn leading_coefficient(&self, i: usize) -> S {
        let r = self.basis.norm_constant(i).expect("cached");
        let m = self.basis.monomial(i).expect("cached").leading_coeff();
        r * m * self.p_at_ell[i] / self.kernel(i, S::one())
    }

    pub fn leading(&self, i: usize) -> S {
        self.leading[i]
    }

    /// Zeros of P_i^{0,ℓ} for 1 ≤ i ≤ k.
    ///
    /// Strict systems use the guaranteed interlacing brackets; relaxed systems
    /// fall back to a sign-change scan of [ℓ, 1] for i = k (brackets against
    /// the Gegenbauer zeros remain valid for i < k since ℓ < t_{i,1}).
    pub fn zeros(&self, i: usize) -> Result<Vec<S>, AdjacentError> {
        assert!(i >= 1 && i <= self.order, "degree out of range");
        if i == self.order {
            return Ok(self.zeros_top.clone());
        }
        let lower = self.basis.zeros(i)?;
        let upper = self.basis.zeros(i + 1)?;
        let mut out = Vec::with_capacity(i);
        for j in 0..i {
            let (lo, hi) = (lower[j], upper[j + 1]);
            let f = |t: S| self.eval(i, t);
            if (f(lo) < S::zero()) == (f(hi) < S::zero()) {
                return Err(AdjacentError::CertificationFailed(format!(
                    "no sign change in bracket ({}, {}) for degree {}",
                    lo, hi, i
                )));
            }
            out.push(bisect(f, lo, hi, self.zero_tol));
        }
        Ok(out)
    }

    fn locate_top_zeros(&self) -> Result<Vec<S>, AdjacentError> {
        let k = self.order;
        if self.is_strict() {
            // Eq-style brackets: (t_{k+1,j+1}, t_{k,j+1}) for j < k, last in
            // (t_{k+1,k+1}, 1).
            let zk = self.basis.zeros(k)?;
            let zk1 = self.basis.zeros(k + 1)?;
            let mut out = Vec::with_capacity(k);
            for j in 0..k {
                let (lo, hi) = if j + 1 < k {
                    (zk1[j + 1], zk[j + 1])
                } else {
                    (zk1[k], S::one())
                };
                let f = |t: S| self.eval(k, t);
                if (f(lo) < S::zero()) == (f(hi) < S::zero()) {
                    return Err(AdjacentError::CertificationFailed(format!(
                        "strict bracket ({}, {}) lost its sign change",
                        lo, hi
                    )));
                }
                out.push(bisect(f, lo, hi, self.zero_tol));
            }
            Ok(out)
        } else {
            let zeros = all_roots(
                |t| self.eval(k, t),
                self.params.ell,
                S::one(),
                self.scan_cells,
                self.zero_tol,
            );
            if zeros.len() != k {
                return Err(AdjacentError::CertificationFailed(format!(
                    "scan found {} zeros of P_k^{{0,ell}}, expected {}",
                    zeros.len(),
                    k
                )));
            }
            Ok(zeros)
        }
    }

    /// Largest zero t_{k,k}^{0,ℓ}.
    pub fn largest_zero(&self) -> S {
        *self.zeros_top.last().expect("k >= 1")
    }

    /// Properties used downstream, certified numerically per instance:
    /// normalization, positive leading coefficients, zeros in [ℓ, 1).
    fn certify(&self) -> Result<(), AdjacentError> {
        let tol = S::of(1e-12);
        for i in 0..=self.order {
            let at_one = self.eval(i, S::one());
            if (at_one - S::one()).abs() > tol {
                return Err(AdjacentError::CertificationFailed(format!(
                    "P_{}^{{0,ell}}(1) = {}",
                    i, at_one
                )));
            }
            if !(self.leading[i] > S::zero()) {
                return Err(AdjacentError::CertificationFailed(format!(
                    "leading coefficient m_{}^{{0,ell}} = {} not positive",
                    i, self.leading[i]
                )));
            }
        }
        let last = self.largest_zero();
        if !(last < S::one()) || !(self.zeros_top[0] >= self.params.ell) {
            return Err(AdjacentError::CertificationFailed(format!(
                "zeros of P_k^{{0,ell}} leave [ell, 1): [{}, {}]",
                self.zeros_top[0], last
            )));
        }
        Ok(())
    }

    /// r_i^{0,ℓ} = 1 / ∫ (P_i^{0,ℓ})² dμ_ℓ via moments, defined for i ≤ k-1.
    pub fn signed_norm_constant(&self, i: usize) -> S {
        let p = self.monomial(i);
        let sq = p.squared();
        // ∫ h dμ_ℓ = c_{n,ℓ}(∫ t·h dμ - ℓ ∫ h dμ)
        let t = Polynomial::from_coeffs(vec![S::zero(), S::one()]);
        let th = &t * &sq;
        let integral =
            self.params.scale_constant() * (self.basis.f0(&th) - self.params.ell * self.basis.f0(&sq));
        S::one() / integral
    }

    /// Check the three-term recurrence (t - a_i)P_i = b_i P_{i+1} + c_i P_{i-1}
    /// with b_i = m_i/m_{i+1}, c_i = r_{i-1} b_{i-1} / r_i, a_i = 1 - b_i - c_i.
    ///
    /// Comparing leading coefficients in the recurrence forces
    /// b_i = m_i^{0,ℓ}/m_{i+1}^{0,ℓ}; the Gegenbauer specialization (where
    /// a_i = 0 by symmetry) confirms the orientation.
    pub fn recurrence_check(&self, samples: usize) -> RecurrenceReport<S> {
        let k = self.order;
        let mut report = RecurrenceReport {
            max_residual: S::zero(),
            coefficients: Vec::new(),
            all_positive: true,
            norms_positive: true,
        };
        let norms: Vec<S> = (0..k).map(|i| self.signed_norm_constant(i)).collect();
        for (i, &r) in norms.iter().enumerate() {
            if !(r > S::zero()) {
                report.norms_positive = false;
                report.coefficients.push((i, S::nan(), S::nan()));
            }
        }
        for i in 1..k {
            let b_i = self.leading[i] / self.leading[i + 1];
            let b_prev = self.leading[i - 1] / self.leading[i];
            let c_i = norms[i - 1] * b_prev / norms[i];
            let a_i = S::one() - b_i - c_i;
            if !(b_i > S::zero() && c_i > S::zero()) {
                report.all_positive = false;
            }
            report.coefficients.push((i, b_i, c_i));
            for s in 0..=samples {
                let t = -S::one()
                    + S::of(2.0) * S::of_usize(s) / S::of_usize(samples.max(1));
                let lhs = (t - a_i) * self.eval(i, t);
                let rhs = b_i * self.eval(i + 1, t) + c_i * self.eval(i - 1, t);
                let res = (lhs - rhs).abs();
                if res > report.max_residual {
                    report.max_residual = res;
                }
            }
        }
        report
    }

    /// Positive quadrature rule on nodes {ℓ, zeros of P_k^{0,ℓ}} exact to
    /// degree 2k, with weights integrated from the Lagrange basis by moments.
    pub fn quadrature(&self) -> Result<QuadratureRule<S>, AdjacentError> {
        let mut nodes = Vec::with_capacity(self.order + 1);
        nodes.push(self.params.ell);
        nodes.extend_from_slice(&self.zeros_top);
        let mut weights = Vec::with_capacity(nodes.len());
        for i in 0..nodes.len() {
            let mut num = Polynomial::constant(S::one());
            let mut den = S::one();
            for (j, &nd) in nodes.iter().enumerate() {
                if j != i {
                    num = &num * &Polynomial::from_coeffs(vec![-nd, S::one()]);
                    den = den * (nodes[i] - nd);
                }
            }
            weights.push(self.basis.f0(&num) / den);
        }
        for (i, &w) in weights.iter().enumerate() {
            if !(w > S::zero()) {
                return Err(AdjacentError::CertificationFailed(format!(
                    "quadrature weight theta_{} = {} not positive",
                    i, w
                )));
            }
        }
        Ok(QuadratureRule {
            nodes,
            weights,
            exactness_degree: 2 * self.order,
            valid_strict: self.is_strict(),
        })
    }
}

/// Diagnostic report from `recurrence_check`.
#[derive(Clone, Debug)]
pub struct RecurrenceReport<S> {
    pub max_residual: S,
    /// (i, b_i, c_i) per checked index.
    pub coefficients: Vec<(usize, S, S)>,
    pub all_positive: bool,
    pub norms_positive: bool,
}

impl<S: Real> RecurrenceReport<S> {
    pub fn passes(&self, tol: S) -> bool {
        self.all_positive && self.norms_positive && self.max_residual <= tol
    }
}

/// Gauss-type rule with node ℓ prepended: f_0 = θ_0 f(ℓ) + Σ θ_i f(t_{k,i}^{0,ℓ}).
#[derive(Clone, Debug, Serialize)]
pub struct QuadratureRule<S> {
    pub nodes: Vec<S>,
    pub weights: Vec<S>,
    pub exactness_degree: usize,
    pub valid_strict: bool,
}

impl<S: Real> QuadratureRule<S> {
    pub fn apply<F: Fn(S) -> S>(&self, f: F) -> S {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(S::zero(), |acc, (&x, &w)| acc + w * f(x))
    }

    pub fn apply_poly(&self, p: &Polynomial<S>) -> S {
        self.apply(|t| p.eval(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    #[test]
    fn validate_ell_examples() {
        // Table grid value: relaxed (ell below the smallest zero of P_3)
        let v = validate_ell(3, 2, -0.97f64).unwrap();
        assert_eq!(v.verdict, EllVerdict::Relaxed);
        // far from the window: rejected
        let v = validate_ell(3, 2, -0.5f64).unwrap();
        assert_eq!(v.verdict, EllVerdict::Rejected);
        // inside the strict window with ratio < 1
        let v = validate_ell(3, 2, -0.7f64).unwrap();
        assert_eq!(v.verdict, EllVerdict::Strict);
    }

    #[test]
    fn degree_one_closed_form() {
        for (n, ell) in [(3usize, -0.97f64), (4, -0.9), (5, -0.6)] {
            let sys = AdjacentSystem::new(n, 2, ell).unwrap();
            for t in [-1.0, -0.3, 0.2, 0.9] {
                let expect = (n as f64 * ell * t + 1.0) / (n as f64 * ell + 1.0);
                assert_abs_diff_eq!(sys.eval(1, t), expect, epsilon = 1e-12);
            }
            assert_abs_diff_eq!(sys.eval(0, 0.37), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn closed_forms_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (n, k, ell) in [(3usize, 2usize, -0.9f64), (4, 3, -0.95), (3, 4, -0.97)] {
            let sys = AdjacentSystem::new(n, k, ell).unwrap();
            for i in 0..k {
                for _ in 0..1000 {
                    let t: f64 = rng.gen_range(-1.0..1.0);
                    if (t - ell).abs() < 1e-3 {
                        continue;
                    }
                    let a = sys.eval(i, t);
                    let b = sys.eval_ratio_form(i, t).unwrap();
                    assert!((a - b).abs() <= 1e-10, "n={} k={} i={} t={}", n, k, i, t);
                }
            }
        }
    }

    #[test]
    fn table_anchor_zeros() {
        let sys = AdjacentSystem::new(3, 2, -0.9f64).unwrap();
        assert!((sys.largest_zero() - 0.710257).abs() < 1e-6);
        let sys = AdjacentSystem::new(4, 2, -0.95f64).unwrap();
        assert!((sys.largest_zero() - 0.614815).abs() < 1e-6);
    }

    #[test]
    fn largest_zero_solves_ratio_equation() {
        // 5t³ + 1.98252t² - 3t - 0.66084 = 0 near 0.71026 for n=3, ell=-0.9
        let sys = AdjacentSystem::new(3, 2, -0.9f64).unwrap();
        let z = sys.largest_zero();
        let res = 5.0 * z.powi(3) + 1.98252 * z * z - 3.0 * z - 0.66084;
        assert!(res.abs() < 5e-5, "residual {}", res);
    }

    #[test]
    fn zeros_interlace_across_degrees() {
        for (n, k, ell) in [(3usize, 3usize, -0.9f64), (4, 4, -0.97)] {
            let sys = AdjacentSystem::new(n, k, ell).unwrap();
            for i in 2..=k {
                let lower = sys.zeros(i - 1).unwrap();
                let upper = sys.zeros(i).unwrap();
                for j in 0..i - 1 {
                    assert!(
                        upper[j] < lower[j] && lower[j] < upper[j + 1],
                        "n={} k={} i={}",
                        n,
                        k,
                        i
                    );
                }
            }
        }
    }

    #[test]
    fn strict_system_brackets() {
        // strict window example: n=3, k=2, ell=-0.7
        let sys = AdjacentSystem::new(3, 2, -0.7f64).unwrap();
        assert!(sys.is_strict());
        let zk = sys.zeros(2).unwrap();
        let basis = GegenbauerBasis::<f64>::new(3, 3).unwrap();
        let g2 = basis.zeros(2).unwrap();
        let g3 = basis.zeros(3).unwrap();
        // Eq-style location: first zero in (t_{3,2}, t_{2,2}), last in (t_{3,3}, 1)
        assert!(g3[1] < zk[0] && zk[0] < g2[1]);
        assert!(g3[2] < zk[1] && zk[1] < 1.0);
    }

    #[test]
    fn recurrence_holds() {
        for (n, k, ell) in [(3usize, 3usize, -0.9f64), (4, 4, -0.95), (3, 2, -0.7)] {
            let sys = AdjacentSystem::new(n, k, ell).unwrap();
            let report = sys.recurrence_check(200);
            assert!(report.passes(1e-9), "n={} k={} ell={}: {:?}", n, k, ell, report.max_residual);
        }
    }

    #[test]
    fn signed_norm_r0_is_one() {
        let sys = AdjacentSystem::new(5, 3, -0.9f64).unwrap();
        assert_abs_diff_eq!(sys.signed_norm_constant(0), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn quadrature_mass_and_positivity() {
        for (n, k, ell) in [(3usize, 2usize, -0.97f64), (4, 3, -0.9), (3, 4, -0.95)] {
            let rule = AdjacentSystem::new(n, k, ell).unwrap().quadrature().unwrap();
            let total: f64 = rule.weights.iter().sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
            assert!(rule.weights.iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn quadrature_exactness_random_polys() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (n, k, ell) in [(3usize, 2usize, -0.9f64), (4, 3, -0.95)] {
            let sys = AdjacentSystem::new(n, k, ell).unwrap();
            let rule = sys.quadrature().unwrap();
            for _ in 0..100 {
                let deg = rng.gen_range(0..=2 * k);
                let coeffs: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let p = Polynomial::from_coeffs(coeffs);
                let via_rule = rule.apply_poly(&p);
                let via_moments = sys.basis().f0(&p);
                assert!(
                    (via_rule - via_moments).abs() <= 1e-10,
                    "n={} k={} deg={}",
                    n,
                    k,
                    deg
                );
            }
        }
    }

    #[test]
    fn quadrature_positivity_identity() {
        // f = (t-ℓ)u_i², u_i = P_k^{0,ℓ}/(t - t_{k,i}): rule output collapses to
        // the single term θ_i (t_{k,i}-ℓ) u_i(t_{k,i})² and matches f_0.
        let sys = AdjacentSystem::new(3, 2, -0.9f64).unwrap();
        let rule = sys.quadrature().unwrap();
        let zeros = sys.zeros(2).unwrap();
        let pk = sys.monomial(2);
        for (i, &z) in zeros.iter().enumerate() {
            let others: Vec<f64> = zeros.iter().copied().filter(|&w| w != z).collect();
            let u = Polynomial::from_roots(&others).scale(pk.leading_coeff());
            let f = &(&Polynomial::from_coeffs(vec![0.9, 1.0]) * &u.squared()) * &Polynomial::constant(1.0);
            let f0 = sys.basis().f0(&f);
            let direct = rule.weights[i + 1] * (z - sys.ell()) * u.eval(z).powi(2);
            assert_abs_diff_eq!(f0, direct, epsilon = 1e-9);
        }
    }

    #[test]
    fn boundary_pointwise_convergence_to_jacobi() {
        // ℓ → -1: P_k^{0,ℓ} approaches the normalized Jacobi polynomial with
        // (α, β) = ((n-3)/2, (n-1)/2), tested pointwise at ℓ = -1 + 1e-6
        for (n, k) in [(3usize, 2usize), (4, 3)] {
            let nf = n as f64;
            let jac = crate::orthopoly::JacobiPolynomials::new((nf - 3.0) / 2.0, (nf - 1.0) / 2.0);
            let at_one = jac.eval(k, 1.0);
            let sys = AdjacentSystem::new(n, k, -1.0 + 1e-6).unwrap();
            for t in [-0.8, -0.3, 0.0, 0.45, 0.9] {
                let expect = jac.eval(k, t) / at_one;
                assert!(
                    (sys.eval(k, t) - expect).abs() < 1e-4,
                    "n={} k={} t={}: {} vs {}",
                    n,
                    k,
                    t,
                    sys.eval(k, t),
                    expect
                );
            }
        }
    }

    #[test]
    fn boundary_degeneration_to_jacobi() {
        // ℓ → -1 limit reproduces the (α, β) = ((n-3)/2, (n-1)/2) Jacobi case
        for n in [3usize, 4] {
            let k = 2;
            let nf = n as f64;
            let t_fl = crate::orthopoly::jacobi_largest_zero((nf - 3.0) / 2.0, (nf - 1.0) / 2.0, k);
            let mut prev_gap = f64::INFINITY;
            for p in 2..=6 {
                let ell = -1.0 + 10f64.powi(-(p as i32));
                let sys = AdjacentSystem::new(n, k, ell).unwrap();
                let gap = (sys.largest_zero() - t_fl).abs();
                assert!(gap < prev_gap, "gap not shrinking at p={}", p);
                prev_gap = gap;
            }
            assert!(prev_gap < 1e-5);
        }
    }

    #[test]
    fn improvement_direction_on_grid() {
        for (n, k) in [(3usize, 2usize), (4, 2), (3, 3), (4, 3), (3, 4), (4, 4)] {
            let nf = n as f64;
            let t_fl =
                crate::orthopoly::jacobi_largest_zero((nf - 3.0) / 2.0, (nf - 1.0) / 2.0, k);
            for ell in [-0.97, -0.95, -0.9] {
                let sys = AdjacentSystem::new(n, k, ell).unwrap();
                assert!(sys.largest_zero() > t_fl, "n={} k={} ell={}", n, k, ell);
            }
        }
    }
}
