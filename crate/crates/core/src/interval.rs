//! Certified rational enclosures of real roots.

use std::ops::Add;

use num_traits::{One, Signed, Zero};

use crate::scalar::{self, rat};
use crate::Rational;

/// A closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn certainly_less(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        scalar::to_f64(&((&self.lo + &self.hi) / scalar::int(2)))
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval { lo: self.lo + rhs.lo, hi: self.hi + rhs.hi }
    }
}

/// Enclosure of `x^{1/n}` for `x ≥ 0` of width at most `width`, by dyadic
/// bisection with exact comparisons `lo^n ≤ x ≤ hi^n`.
pub fn nth_root(x: &Rational, n: usize, width: &Rational) -> Interval {
    assert!(n >= 1, "root index must be positive");
    assert!(!x.is_negative(), "root of a negative number");
    assert!(width.is_positive(), "width must be positive");
    if x.is_zero() || x.is_one() || n == 1 {
        return Interval::point(x.clone());
    }
    let mut lo = Rational::zero();
    let mut hi = if x > &Rational::one() { x.clone() } else { Rational::one() };
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / scalar::int(2);
        if scalar::pow(&mid, n) <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval { lo, hi }
}

/// The default certification width `10⁻⁹`.
pub fn default_width() -> Rational {
    rat(1, 1_000_000_000)
}
