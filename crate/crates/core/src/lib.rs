//! Exact local volumes of divisors, multiplicities of monomial ideals and
//! volumes on cone models.

pub mod cli;
pub mod cone;
pub mod geometry;
pub mod interval;
pub mod linalg;
pub mod lp;
pub mod monomial;
pub mod poly;
pub mod quadratic;
pub mod scalar;
pub mod surface;
pub mod symbolic;
pub mod toric;

pub use quadratic::QuadraticNumber;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;

/// One row of a convergence table: level, exact value, normalized value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceEntry {
    pub index: u64,
    pub value: Rational,
    pub normalized: Rational,
}
