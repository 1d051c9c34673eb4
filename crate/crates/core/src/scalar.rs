//! Scalar traits shared by the generic linear algebra, LP and polynomial code.
//!
//! `Scalar` is a commutative ring that admits rational constants; `Field`
//! adds exact division and a total order. Both are implemented for
//! [`Rational`] and [`QuadraticNumber`](crate::QuadraticNumber); the
//! symbolic multivariate polynomials only implement `Scalar`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: &Rational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }
}

pub trait Field: Scalar + Div<Output = Self> + PartialOrd {
    fn sign(&self) -> Ordering {
        self.partial_cmp(&Self::zero())
            .expect("field elements are totally ordered")
    }

    fn is_neg(&self) -> bool {
        self.sign() == Ordering::Less
    }

    fn is_pos(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn abs_val(&self) -> Self {
        if self.is_neg() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for BigRational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Field for BigRational {}

/// `p/q` with small integers; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Always renders `p/q`, including integers (`0/1`, `3/1`).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal `{}`", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Accepts `n`, `p/q` (any sign, q != 0) and finite decimals such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let whole = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|_| err())?.abs()
        };
        let frac = BigInt::from_str(frac_part).map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let mag = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -mag } else { mag });
    }
    if t.contains('/') {
        let (n, d) = t.split_once('/').ok_or_else(err)?;
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    BigInt::from_str(t)
        .map(Rational::from_integer)
        .map_err(|_| err())
}

pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a rational vector to a primitive integer vector pointing the same way.
/// Returns `None` for the zero vector.
pub fn primitive_direction(v: &[Rational]) -> Option<Vec<BigInt>> {
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|q| (q * &den).to_integer()).collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / &g).collect())
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn pow(q: &Rational, e: usize) -> Rational {
    num_traits::pow(q.clone(), e)
}

pub fn dot_int_rat(a: &[BigInt], u: &[Rational]) -> Rational {
    a.iter()
        .zip(u)
        .fold(Rational::zero(), |acc, (x, y)| acc + y * x)
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn formats_integers_with_denominator() {
        assert_eq!(format_rational(&int(0)), "0/1");
        assert_eq!(format_rational(&rat(-79, 24)), "-79/24");
    }

    #[test]
    fn floor_and_ceil_of_negatives() {
        assert_eq!(floor(&rat(-3, 2)), BigInt::from(-2));
        assert_eq!(ceil(&rat(-3, 2)), BigInt::from(-1));
        assert_eq!(ceil(&rat(3, 2)), BigInt::from(2));
    }

    #[test]
    fn primitive_direction_clears_denominators() {
        let v = primitive_direction(&[rat(1, 2), rat(-3, 4), int(0)]).unwrap();
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
        assert!(primitive_direction(&[int(0), int(0)]).is_none());
    }
}
