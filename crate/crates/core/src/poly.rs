//! Dense univariate polynomials over a [`Scalar`] ring and continuous
//! piecewise polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{self, Field, Scalar};

/// `Σ coeffs[k]·tᵏ`, trailing zeros trimmed.
#[derive(Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `a + b·t`.
    pub fn linear(a: T, b: T) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(T::one()), |acc, _| acc * self.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * T::from_int(k as i64)).collect(),
        )
    }

    /// Antiderivative vanishing at `t = 0`.
    pub fn antiderivative(&self) -> Self {
        let mut out = vec![T::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c.clone() * T::from_rational(&scalar::rat(1, k as i64 + 1)));
        }
        Self::new(out)
    }

    /// `∫_a^b p(t) dt`.
    pub fn integrate(&self, a: &T, b: &T) -> T {
        let q = self.antiderivative();
        q.eval(b) - q.eval(a)
    }
}

impl<T: Scalar> Add for Polynomial<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[T], k: usize| v.get(k).cloned().unwrap_or_else(T::zero);
        Self::new((0..n).map(|k| get(&self.coeffs, k) + get(&rhs.coeffs, k)).collect())
    }
}

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: Scalar> Sub for Polynomial<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Mul for Polynomial<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<T: Scalar + fmt::Display> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})·t"),
                _ => format!("({c})·t^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PiecewiseError {
    #[error("expected {expected} breakpoints for {pieces} pieces, got {got}")]
    Shape { pieces: usize, expected: usize, got: usize },
    #[error("breakpoints are not strictly increasing at index {0}")]
    NotIncreasing(usize),
    #[error("pieces disagree at breakpoint {0}")]
    Discontinuous(usize),
    #[error("breakpoints lie in different quadratic fields")]
    MixedFields,
}

/// A continuous function on `[b₀, ∞)`: `pieces[i]` on `[bᵢ, bᵢ₊₁]`, and 0
/// after the last breakpoint.
#[derive(Clone, PartialEq)]
pub struct PiecewisePoly<F> {
    breakpoints: Vec<F>,
    pieces: Vec<Polynomial<F>>,
}

impl<F: Field> PiecewisePoly<F> {
    pub fn new(breakpoints: Vec<F>, pieces: Vec<Polynomial<F>>) -> Result<Self, PiecewiseError> {
        if breakpoints.len() != pieces.len() + 1 {
            return Err(PiecewiseError::Shape {
                pieces: pieces.len(),
                expected: pieces.len() + 1,
                got: breakpoints.len(),
            });
        }
        for k in 1..breakpoints.len() {
            match breakpoints[k - 1].partial_cmp(&breakpoints[k]) {
                Some(std::cmp::Ordering::Less) => {}
                Some(_) => return Err(PiecewiseError::NotIncreasing(k)),
                None => return Err(PiecewiseError::MixedFields),
            }
        }
        for k in 1..breakpoints.len() {
            let b = &breakpoints[k];
            let left = pieces[k - 1].eval(b);
            let right = pieces.get(k).map_or_else(F::zero, |p| p.eval(b));
            if left != right {
                return Err(PiecewiseError::Discontinuous(k));
            }
        }
        Ok(PiecewisePoly { breakpoints, pieces })
    }

    /// The zero function on `[start, ∞)`.
    pub fn zero(start: F) -> Self {
        PiecewisePoly { breakpoints: vec![start], pieces: Vec::new() }
    }

    pub fn breakpoints(&self) -> &[F] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial<F>] {
        &self.pieces
    }

    pub fn is_identically_zero(&self) -> bool {
        self.pieces.iter().all(Polynomial::is_zero)
    }

    /// `None` before the first breakpoint.
    pub fn eval(&self, t: &F) -> Option<F> {
        if *t < self.breakpoints[0] {
            return None;
        }
        for (k, p) in self.pieces.iter().enumerate() {
            if *t <= self.breakpoints[k + 1] {
                return Some(p.eval(t));
            }
        }
        Some(F::zero())
    }

    /// `∫` over the whole domain.
    pub fn integral(&self) -> F {
        self.pieces
            .iter()
            .enumerate()
            .fold(F::zero(), |acc, (k, p)| acc + p.integrate(&self.breakpoints[k], &self.breakpoints[k + 1]))
    }

    /// Derivative sign check at both endpoints and the midpoint of every piece.
    pub fn is_non_increasing_at_samples(&self) -> bool {
        let two = F::from_int(2);
        self.pieces.iter().enumerate().all(|(k, p)| {
            let d = p.derivative();
            let (a, b) = (&self.breakpoints[k], &self.breakpoints[k + 1]);
            let mid = (a.clone() + b.clone()) / two.clone();
            [a.clone(), mid, b.clone()].iter().all(|t| !d.eval(t).is_pos())
        })
    }
}

impl<F: Field + fmt::Display> fmt::Debug for PiecewisePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.pieces.iter().enumerate() {
            writeln!(f, "[{}, {}]: {:?}", self.breakpoints[k], self.breakpoints[k + 1], p)?;
        }
        write!(f, "[{}, ∞): 0", self.breakpoints.last().expect("non-empty"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::Rational;

    fn p(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn arithmetic_and_calculus() {
        let a = p(&[1, -4]);
        assert_eq!(a.pow(2), p(&[1, -8, 16]));
        assert_eq!((a.clone() - a.clone()).degree(), None);
        assert_eq!(p(&[0, 0, 3]).antiderivative(), p(&[0, 0, 0, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert_eq!(a.pow(2).integrate(&int(0), &rat(1, 4)), rat(1, 12));
    }

    #[test]
    fn piecewise_validation() {
        let f = PiecewisePoly::new(vec![int(0), int(2)], vec![p(&[2, -1])]).unwrap();
        assert_eq!(f.integral(), int(2));
        assert_eq!(f.eval(&int(1)), Some(int(1)));
        assert_eq!(f.eval(&int(5)), Some(int(0)));
        assert!(f.is_non_increasing_at_samples());
        assert_eq!(
            PiecewisePoly::new(vec![int(0), int(1)], vec![p(&[2, -1])]),
            Err(PiecewiseError::Discontinuous(1))
        );
        assert_eq!(
            PiecewisePoly::new(vec![int(0), int(0)], vec![p(&[0])]),
            Err(PiecewiseError::NotIncreasing(1))
        );
        assert!(PiecewisePoly::zero(int(0)).is_identically_zero());
    }
}
