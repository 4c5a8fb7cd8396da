//! Univariate polynomials in monomial coefficient form.
//!
//! Degrees in this crate stay small (at most ~2k+2 with k ≤ 10), so plain
//! monomial coefficients with Horner evaluation are numerically adequate.

use std::ops::{Add, Mul, Sub};

use crate::scalar::Real;

/// Real polynomial, coefficients lowest degree first.
///
/// The coefficient vector is kept trimmed: the leading coefficient is nonzero
/// unless the polynomial is identically zero (represented by a single zero
/// coefficient).
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Real> Polynomial<S> {
    pub fn zero() -> Self {
        Self { coeffs: vec![S::zero()] }
    }

    pub fn constant(c: S) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    /// Monic product Π (t - r) over the given roots.
    pub fn from_roots(roots: &[S]) -> Self {
        let mut p = Self::constant(S::one());
        for &r in roots {
            p = &p * &Self::from_coeffs(vec![-r, S::one()]);
        }
        p
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().copied() == Some(S::zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(S::zero());
        }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == S::zero()
    }

    pub fn leading_coeff(&self) -> S {
        *self.coeffs.last().expect("non-empty coefficient vector")
    }

    /// Horner evaluation.
    pub fn eval(&self, t: S) -> S {
        let mut acc = S::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn scale(&self, factor: S) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * S::of_usize(i))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Composition with an affine argument: p(a·t + b).
    pub fn shift_scale(&self, a: S, b: S) -> Self {
        let inner = Self::from_coeffs(vec![b, a]);
        let mut acc = Self::zero();
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Self::constant(c);
        }
        acc
    }

    /// p(t)².
    pub fn squared(&self) -> Self {
        self * self
    }
}

impl<S: Real> Add for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn add(self, rhs: Self) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![S::zero(); n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or_else(S::zero);
            let b = rhs.coeffs.get(i).copied().unwrap_or_else(S::zero);
            *c = a + b;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl<S: Real> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn sub(self, rhs: Self) -> Polynomial<S> {
        self + &rhs.scale(-S::one())
    }
}

impl<S: Real> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn mul(self, rhs: Self) -> Polynomial<S> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}
