//! Sparse multivariate polynomials with rational coefficients, used as a
//! [`Scalar`] ring for symbolic identities.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::Rational;

/// Exponent vector with trailing zeros trimmed.
type Monomial = Vec<u32>;

fn trim(mut e: Monomial) -> Monomial {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

/// `a / b` when `b` divides `a`.
fn mono_div(a: &[u32], b: &[u32]) -> Option<Monomial> {
    if b.iter().enumerate().any(|(i, &e)| a.get(i).copied().unwrap_or(0) < e) {
        return None;
    }
    Some(trim(a.iter().enumerate().map(|(i, &e)| e - b.get(i).copied().unwrap_or(0)).collect()))
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::term(e, Rational::one())
    }

    pub fn term(exponents: Vec<u32>, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(trim(exponents), coeff);
        }
        MultiPoly { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e: Monomial, c: Rational) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Rewrites every multiple of `lhs` with `rhs` until none remain;
    /// `None` if `max_steps` rewrites do not suffice.
    pub fn reduce(&self, lhs: &[u32], rhs: &MultiPoly, max_steps: usize) -> Option<MultiPoly> {
        let mut cur = self.clone();
        for _ in 0..max_steps {
            let hit = cur.terms.iter().find_map(|(e, c)| mono_div(e, lhs).map(|q| (e.clone(), q, c.clone())));
            let Some((e, q, c)) = hit else {
                return Some(cur);
            };
            cur.terms.remove(&e);
            cur = cur + MultiPoly::term(q, c) * rhs.clone();
        }
        None
    }
}

impl Add for MultiPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.insert(e, c);
        }
        self
    }
}

impl Neg for MultiPoly {
    type Output = Self;
    fn neg(self) -> Self {
        MultiPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Sub for MultiPoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for MultiPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = MultiPoly::default();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.insert(mono_mul(a, b), x * y);
            }
        }
        out
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Scalar for MultiPoly {
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}·{}", vars.join("·"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn ring_operations() {
        let x = MultiPoly::var(0);
        let y = MultiPoly::var(1);
        let s = (x.clone() + y.clone()) * (x.clone() - y.clone());
        assert_eq!(s, x.clone() * x.clone() - y.clone() * y.clone());
        assert!((s.clone() - s).is_zero());
        assert_eq!(MultiPoly::from_int(3) * x.clone(), MultiPoly::term(vec![1], int(3)));
    }

    #[test]
    fn rewriting() {
        // x² → y reduces x³ + x² to x·y + y
        let x = MultiPoly::var(0);
        let y = MultiPoly::var(1);
        let p = x.clone() * x.clone() * x.clone() + x.clone() * x.clone();
        let r = p.reduce(&[2], &y, 10).unwrap();
        assert_eq!(r, x * y.clone() + y);
    }
}
