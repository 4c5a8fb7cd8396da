//! Gegenbauer and Jacobi orthogonal polynomials.
//!
//! Gegenbauer polynomials P_i^{(n)} are normalized by P_i^{(n)}(1) = 1 and are
//! orthogonal on [-1, 1] against dμ(t) = c_n (1 - t²)^{(n-3)/2} dt with total
//! mass 1. Point evaluation always goes through the three-term recurrence;
//! monomial coefficient forms are kept only to integrate against dμ via the
//! exact moment recurrence.

use thiserror::Error;

use crate::poly::Polynomial;
use crate::roots::bisect;
use crate::scalar::Real;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrthoError {
    #[error("degree {requested} exceeds cached maximum {max}")]
    DegreeOutOfRange { requested: usize, max: usize },
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
}

/// m-th moment ∫ t^m dμ(t) of the normalized Gegenbauer measure in dimension n.
///
/// Odd moments vanish; even ones follow μ_{2j} = μ_{2j-2} (2j-1)/(n+2j-2).
pub fn measure_moment<S: Real>(n: usize, m: usize) -> S {
    if m % 2 == 1 {
        return S::zero();
    }
    let mut mu = S::one();
    let mut j = 1usize;
    while 2 * j <= m {
        mu = mu * S::of_usize(2 * j - 1) / S::of_usize(n + 2 * j - 2);
        j += 1;
    }
    mu
}

/// ∫ f dμ for a polynomial in monomial form: the degree-0 Gegenbauer expansion
/// coefficient f_0.
pub fn gegenbauer_f0<S: Real>(n: usize, f: &Polynomial<S>) -> S {
    f.coeffs()
        .iter()
        .enumerate()
        .fold(S::zero(), |acc, (m, &c)| acc + c * measure_moment::<S>(n, m))
}

/// Dimension-n Gegenbauer system cached up to a maximum degree.
#[derive(Clone, Debug)]
pub struct GegenbauerBasis<S> {
    dimension: usize,
    max_degree: usize,
    /// (a_i, b_i) with P_{i+1} = a_i t P_i - b_i P_{i-1}, for i = 1..max_degree-1.
    recurrence: Vec<(S, S)>,
    monomial: Vec<Polynomial<S>>,
    zeros: Vec<Vec<S>>,
    norms: Vec<S>,
    zero_tol: S,
}

impl<S: Real> GegenbauerBasis<S> {
    pub fn new(dimension: usize, max_degree: usize) -> Result<Self, OrthoError> {
        Self::with_zero_tolerance(dimension, max_degree, S::of(1e-12))
    }

    pub fn with_zero_tolerance(
        dimension: usize,
        max_degree: usize,
        zero_tol: S,
    ) -> Result<Self, OrthoError> {
        if dimension < 2 {
            return Err(OrthoError::DimensionTooSmall(dimension));
        }
        let n = dimension;
        let mut recurrence = Vec::new();
        for i in 1..max_degree.max(1) {
            let denom = S::of_usize(i + n - 2);
            recurrence.push((S::of_usize(2 * i + n - 2) / denom, S::of_usize(i) / denom));
        }

        let mut monomial: Vec<Polynomial<S>> = Vec::with_capacity(max_degree + 1);
        monomial.push(Polynomial::constant(S::one()));
        if max_degree >= 1 {
            monomial.push(Polynomial::from_coeffs(vec![S::zero(), S::one()]));
        }
        for i in 1..max_degree {
            let (a, b) = recurrence[i - 1];
            let t = Polynomial::from_coeffs(vec![S::zero(), S::one()]);
            let next = &(&t * &monomial[i]).scale(a) - &monomial[i - 1].scale(b);
            monomial.push(next);
        }

        let norms = monomial
            .iter()
            .map(|p| S::one() / gegenbauer_f0(n, &p.squared()))
            .collect();

        let mut basis = Self {
            dimension,
            max_degree,
            recurrence,
            monomial,
            zeros: Vec::new(),
            norms,
            zero_tol,
        };
        basis.zeros = basis.compute_zero_table();
        Ok(basis)
    }

    fn compute_zero_table(&self) -> Vec<Vec<S>> {
        let mut table: Vec<Vec<S>> = vec![Vec::new()];
        for degree in 1..=self.max_degree {
            let prev = &table[degree - 1];
            let mut brackets = Vec::with_capacity(degree + 1);
            brackets.push(-S::one());
            brackets.extend_from_slice(prev);
            brackets.push(S::one());
            let zeros = (0..degree)
                .map(|j| {
                    bisect(
                        |t| self.eval(degree, t).expect("degree within cache"),
                        brackets[j],
                        brackets[j + 1],
                        self.zero_tol,
                    )
                })
                .collect();
            table.push(zeros);
        }
        table
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// P_i^{(n)}(t) by the three-term recurrence.
    pub fn eval(&self, i: usize, t: S) -> Result<S, OrthoError> {
        if i > self.max_degree {
            return Err(OrthoError::DegreeOutOfRange { requested: i, max: self.max_degree });
        }
        if i == 0 {
            return Ok(S::one());
        }
        let mut prev = S::one();
        let mut cur = t;
        for step in 1..i {
            let (a, b) = self.recurrence[step - 1];
            let next = a * t * cur - b * prev;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// Strictly increasing zeros of P_i^{(n)}, refined by interlacing-bracketed
    /// bisection.
    pub fn zeros(&self, i: usize) -> Result<&[S], OrthoError> {
        if i > self.max_degree {
            return Err(OrthoError::DegreeOutOfRange { requested: i, max: self.max_degree });
        }
        Ok(&self.zeros[i])
    }

    /// Norm constant r_j = 1 / ∫ (P_j)² dμ.
    pub fn norm_constant(&self, j: usize) -> Result<S, OrthoError> {
        self.norms
            .get(j)
            .copied()
            .ok_or(OrthoError::DegreeOutOfRange { requested: j, max: self.max_degree })
    }

    /// Monomial coefficient form of P_i^{(n)} (used only for integration).
    pub fn monomial(&self, i: usize) -> Result<&Polynomial<S>, OrthoError> {
        self.monomial
            .get(i)
            .ok_or(OrthoError::DegreeOutOfRange { requested: i, max: self.max_degree })
    }

    /// ∫ f dμ in this basis's dimension.
    pub fn f0(&self, f: &Polynomial<S>) -> S {
        gegenbauer_f0(self.dimension, f)
    }
}

/// Jacobi polynomials P_i^{(α,β)} (standard normalization; only zeros matter
/// here, which are normalization independent).
#[derive(Clone, Debug)]
pub struct JacobiPolynomials<S> {
    alpha: S,
    beta: S,
}

impl<S: Real> JacobiPolynomials<S> {
    pub fn new(alpha: S, beta: S) -> Self {
        Self { alpha, beta }
    }

    pub fn eval(&self, k: usize, t: S) -> S {
        let (a, b) = (self.alpha, self.beta);
        if k == 0 {
            return S::one();
        }
        let two = S::of(2.0);
        let mut prev = S::one();
        let mut cur = ((a + b + two) * t + (a - b)) / two;
        for i in 2..=k {
            let i_s = S::of_usize(i);
            let c1 = two * i_s * (i_s + a + b) * (two * i_s + a + b - two);
            let c2 = two * i_s + a + b - S::one();
            let c3 = (two * i_s + a + b) * (two * i_s + a + b - two);
            let c4 = a * a - b * b;
            let c5 = two * (i_s + a - S::one()) * (i_s + b - S::one()) * (two * i_s + a + b);
            let next = (c2 * (c3 * t + c4) * cur - c5 * prev) / c1;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// All k zeros, ascending, by interlacing-bracketed bisection.
    pub fn zeros(&self, k: usize, tol: S) -> Vec<S> {
        let mut zeros: Vec<S> = Vec::new();
        for degree in 1..=k {
            let mut brackets = Vec::with_capacity(degree + 1);
            brackets.push(-S::one());
            brackets.extend_from_slice(&zeros);
            brackets.push(S::one());
            zeros = (0..degree)
                .map(|j| bisect(|t| self.eval(degree, t), brackets[j], brackets[j + 1], tol))
                .collect();
        }
        zeros
    }
}

/// Largest zero of the degree-k Jacobi polynomial P^{(α,β)}.
pub fn jacobi_largest_zero<S: Real>(alpha: S, beta: S, k: usize) -> S {
    *JacobiPolynomials::new(alpha, beta)
        .zeros(k, S::of(1e-13))
        .last()
        .expect("k >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn moments_match_closed_forms() {
        for n in [2usize, 3, 4, 5, 10, 24] {
            assert_abs_diff_eq!(measure_moment::<f64>(n, 0), 1.0, epsilon = 0.0);
            assert_abs_diff_eq!(measure_moment::<f64>(n, 1), 0.0, epsilon = 0.0);
            assert_abs_diff_eq!(measure_moment::<f64>(n, 2), 1.0 / n as f64, epsilon = 1e-15);
            assert_abs_diff_eq!(
                measure_moment::<f64>(n, 4),
                3.0 / (n as f64 * (n as f64 + 2.0)),
                epsilon = 1e-15
            );
        }
    }

    // Moment recurrence vs direct numerical integration of
    // t^m (1-t²)^{(n-3)/2}, via the substitution t = cos θ.
    #[test]
    fn moments_match_quadrature_oracle() {
        for n in [3usize, 4, 5, 10] {
            let raw = |m: usize| -> f64 {
                // ∫_0^π cos^m θ sin^{n-2} θ dθ by composite Simpson
                let cells = 20_000;
                let h = std::f64::consts::PI / cells as f64;
                let f = |theta: f64| theta.cos().powi(m as i32) * theta.sin().powi(n as i32 - 2);
                let mut sum = f(0.0) + f(std::f64::consts::PI);
                for i in 1..cells {
                    let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                    sum += w * f(i as f64 * h);
                }
                sum * h / 3.0
            };
            let mass = raw(0);
            for m in 0..=12 {
                let oracle = raw(m) / mass;
                let ours = measure_moment::<f64>(n, m);
                if oracle.abs() < 1e-12 {
                    assert!(ours.abs() < 1e-12);
                } else {
                    assert!(
                        ((ours - oracle) / oracle).abs() < 1e-8,
                        "n={} m={}: {} vs {}",
                        n,
                        m,
                        ours,
                        oracle
                    );
                }
            }
        }
    }

    #[test]
    fn normalization_at_one() {
        for n in 2..=32 {
            let basis = GegenbauerBasis::<f64>::new(n, 12).unwrap();
            for i in 0..=12 {
                assert!(
                    (basis.eval(i, 1.0).unwrap() - 1.0).abs() <= 1e-12,
                    "n={} i={}",
                    n,
                    i
                );
            }
        }
    }

    #[test]
    fn degree_one_is_identity() {
        let basis = GegenbauerBasis::<f64>::new(7, 3).unwrap();
        assert_abs_diff_eq!(basis.eval(1, 0.3).unwrap(), 0.3, epsilon = 1e-15);
    }

    #[test]
    fn legendre_degree_two() {
        let basis = GegenbauerBasis::<f64>::new(3, 4).unwrap();
        for t in [-0.9, -0.3, 0.0, 0.4, 0.77] {
            assert_abs_diff_eq!(
                basis.eval(2, t).unwrap(),
                (3.0 * t * t - 1.0) / 2.0,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn dimension_four_degree_two_zero() {
        // P_2^{(n)}(t) = (n t² - 1)/(n - 1) vanishes at 1/√n
        let basis = GegenbauerBasis::<f64>::new(4, 3).unwrap();
        assert_abs_diff_eq!(basis.eval(2, 0.5).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn degree_exceeding_cache_is_range_error() {
        let basis = GegenbauerBasis::<f64>::new(3, 4).unwrap();
        assert_eq!(
            basis.eval(5, 0.1),
            Err(OrthoError::DegreeOutOfRange { requested: 5, max: 4 })
        );
    }

    #[test]
    fn zeros_of_low_degrees() {
        let basis = GegenbauerBasis::<f64>::new(3, 4).unwrap();
        let z2 = basis.zeros(2).unwrap();
        assert_abs_diff_eq!(z2[0], -(1.0f64 / 3.0).sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(z2[1], (1.0f64 / 3.0).sqrt(), epsilon = 1e-12);
        let z3 = basis.zeros(3).unwrap();
        assert_abs_diff_eq!(z3[0], -(0.6f64).sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(z3[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(z3[2], (0.6f64).sqrt(), epsilon = 1e-12);

        for n in [4usize, 5, 9] {
            let b = GegenbauerBasis::<f64>::new(n, 2).unwrap();
            let z = b.zeros(2).unwrap();
            assert_abs_diff_eq!(z[1], 1.0 / (n as f64).sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn zeros_interlace() {
        for n in [2usize, 3, 5, 11] {
            let basis = GegenbauerBasis::<f64>::new(n, 10).unwrap();
            for i in 1..10 {
                let a = basis.zeros(i).unwrap();
                let b = basis.zeros(i + 1).unwrap();
                for j in 0..i {
                    assert!(b[j] < a[j] && a[j] < b[j + 1], "n={} i={} j={}", n, i, j);
                }
            }
        }
    }

    #[test]
    fn norm_constants() {
        let basis = GegenbauerBasis::<f64>::new(3, 4).unwrap();
        assert_abs_diff_eq!(basis.norm_constant(0).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(basis.norm_constant(1).unwrap(), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(basis.norm_constant(2).unwrap(), 5.0, epsilon = 1e-12);
        let b7 = GegenbauerBasis::<f64>::new(7, 2).unwrap();
        assert_abs_diff_eq!(b7.norm_constant(1).unwrap(), 7.0, epsilon = 1e-12);
    }

    #[test]
    fn orthogonality_through_f0() {
        for n in [3usize, 6] {
            let basis = GegenbauerBasis::<f64>::new(n, 6).unwrap();
            for i in 0..=6 {
                for j in 0..=6 {
                    let prod = basis.monomial(i).unwrap() * basis.monomial(j).unwrap();
                    let val = basis.f0(&prod);
                    if i == j {
                        let expect = 1.0 / basis.norm_constant(j).unwrap();
                        assert!((val - expect).abs() <= 1e-10, "n={} i={} j={}", n, i, j);
                    } else {
                        assert!(val.abs() <= 1e-10, "n={} i={} j={}", n, i, j);
                    }
                }
            }
        }
    }

    #[test]
    fn f0_examples() {
        let t2: Polynomial<f64> = Polynomial::from_coeffs(vec![0.0, 0.0, 1.0]);
        for n in [3usize, 5, 8] {
            assert_abs_diff_eq!(gegenbauer_f0(n, &t2), 1.0 / n as f64, epsilon = 1e-14);
        }
        // f = (t² - a)² → a² - 2a/n + 3/(n(n+2))
        for n in [3usize, 4, 10] {
            for a in [-0.4, 0.1, 0.55] {
                let f = Polynomial::from_coeffs(vec![-a, 0.0, 1.0]).squared();
                let nf = n as f64;
                let expect = a * a - 2.0 * a / nf + 3.0 / (nf * (nf + 2.0));
                assert_abs_diff_eq!(gegenbauer_f0(n, &f), expect, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn jacobi_largest_zero_table_anchor() {
        // α = 0, β = 1, k = 2: (1 + √6)/5, matching the tabulated 0.689897
        // after 6-digit truncation
        let z: f64 = jacobi_largest_zero(0.0, 1.0, 2);
        assert_eq!((z * 1e6).floor() / 1e6, 0.689897);
        assert_abs_diff_eq!(z, (1.0 + 6.0f64.sqrt()) / 5.0, epsilon = 1e-12);
    }

    #[test]
    fn jacobi_closed_form_family() {
        for n in [3usize, 4, 5, 7, 10] {
            let nf = n as f64;
            let z = jacobi_largest_zero((nf - 3.0) / 2.0, (nf - 1.0) / 2.0, 2);
            assert_abs_diff_eq!(z, (1.0 + (nf + 3.0).sqrt()) / (nf + 2.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn jacobi_symmetric_case_reduces_to_gegenbauer() {
        for n in [3usize, 5, 8] {
            let basis = GegenbauerBasis::<f64>::new(n, 4).unwrap();
            for k in [2usize, 3, 4] {
                let alpha = (n as f64 - 3.0) / 2.0;
                let z = jacobi_largest_zero(alpha, alpha, k);
                let g = *basis.zeros(k).unwrap().last().unwrap();
                assert_abs_diff_eq!(z, g, epsilon = 1e-11);
            }
        }
    }
}
