//! Exact real quadratic numbers `a + b·√c`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{self, Field, Scalar};
use crate::Rational;

/// `a + b·√c` with `c` square-free. Rationals are stored with `b = 0, c = 0`,
/// so equality of values is equality of the triples.
///
/// Arithmetic between numbers from different fields `ℚ(√c)` panics; use the
/// `checked_*` variants where the fields are not known to agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    c: u64,
}

fn square_free_split(c: u64) -> (u64, u64) {
    // c = s^2 * r with r square-free
    let mut s = 1u64;
    let mut r = c;
    let mut p = 2u64;
    while p.saturating_mul(p) <= r {
        while r % (p * p) == 0 {
            r /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, r)
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, c: u64) -> Self {
        let (s, r) = if c == 0 { (0, 0) } else { square_free_split(c) };
        let b = b * scalar::int(s as i64);
        Self::normalized(a, b, r)
    }

    fn normalized(a: Rational, b: Rational, c: u64) -> Self {
        if b.is_zero() || c == 0 {
            return QuadraticNumber { a, b: Rational::zero(), c: 0 };
        }
        if c == 1 {
            return QuadraticNumber { a: a + b, b: Rational::zero(), c: 0 };
        }
        QuadraticNumber { a, b, c }
    }

    pub fn rational(a: Rational) -> Self {
        QuadraticNumber { a, b: Rational::zero(), c: 0 }
    }

    /// `√q` for `q ≥ 0`.
    pub fn sqrt_rational(q: &Rational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Self::zero());
        }
        // √(p/r) = √(p·r) / r
        let pr = q.numer() * q.denom();
        let pr = pr.to_u64()?;
        let (s, rest) = square_free_split(pr);
        let coeff = Rational::new(BigInt::from(s), q.denom().clone());
        if rest == 1 {
            return Some(Self::rational(coeff));
        }
        Some(Self::normalized(Rational::zero(), coeff, rest))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conjugate(&self) -> Self {
        Self::normalized(self.a.clone(), -self.b.clone(), self.c)
    }

    fn common_field(&self, other: &Self) -> Option<u64> {
        match (self.c, other.c) {
            (0, c) | (c, 0) => Some(c),
            (x, y) if x == y => Some(x),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let c = self.common_field(other)?;
        Some(Self::normalized(&self.a + &other.a, &self.b + &other.b, c))
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let c = self.common_field(other)?;
        let cq = scalar::int(c as i64);
        let a = &self.a * &other.a + &self.b * &other.b * cq;
        let b = &self.a * &other.b + &self.b * &other.a;
        Some(Self::normalized(a, b, c))
    }

    /// Field norm `a² − b²c`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * scalar::int(self.c as i64)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let n = other.norm();
        let num = self.checked_mul(&other.conjugate())?;
        Some(Self::normalized(num.a / &n, num.b / &n, num.c))
    }

    pub fn signum_exact(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2c = &self.b * &self.b * scalar::int(self.c as i64);
        if a2 > b2c {
            sa
        } else {
            sb
        }
    }

    pub fn to_f64(&self) -> f64 {
        scalar::to_f64(&self.a) + scalar::to_f64(&self.b) * (self.c as f64).sqrt()
    }

    /// Exact floor, found from a float estimate and corrected by exact sign tests.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return scalar::floor(&self.a);
        }
        // isqrt-based bracket for b√c keeps this exact for huge values
        let est = self.to_f64();
        let mut n = if est.is_finite() && est.abs() < 1e15 {
            BigInt::from(est.floor() as i64)
        } else {
            let s = self.b.abs() * self.b.abs() * scalar::int(self.c as i64);
            let r = scalar::floor(&s).sqrt();
            let approx = if self.b.is_negative() { -r } else { r };
            scalar::floor(&self.a) + approx
        };
        loop {
            let lo = self.clone() - Self::rational(Rational::from_integer(n.clone()));
            if lo.signum_exact() == Ordering::Less {
                n -= 1;
                continue;
            }
            let hi = self.clone() - Self::rational(Rational::from_integer(&n + 1));
            if hi.signum_exact() != Ordering::Less {
                n += 1;
                continue;
            }
            return n;
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        write!(f, "{} + {}·√{}", self.a, self.b, self.c)
    }
}

impl Add for QuadraticNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs)
            .unwrap_or_else(|| panic!("mixed quadratic fields √{} and √{}", self.c, rhs.c))
    }
}

impl Sub for QuadraticNumber {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs)
            .unwrap_or_else(|| panic!("mixed quadratic fields √{} and √{}", self.c, rhs.c))
    }
}

impl Mul for QuadraticNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs)
            .unwrap_or_else(|| panic!("mixed quadratic fields √{} and √{}", self.c, rhs.c))
    }
}

impl Div for QuadraticNumber {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        self.checked_div(&rhs)
            .unwrap_or_else(|| panic!("mixed quadratic fields √{} and √{}", self.c, rhs.c))
    }
}

impl Neg for QuadraticNumber {
    type Output = Self;
    fn neg(self) -> Self {
        QuadraticNumber { a: -self.a, b: -self.b, c: self.c }
    }
}

impl Zero for QuadraticNumber {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadraticNumber {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.checked_sub(other).map(|d| d.signum_exact())
    }
}

impl Scalar for QuadraticNumber {
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
}

impl Field for QuadraticNumber {}
