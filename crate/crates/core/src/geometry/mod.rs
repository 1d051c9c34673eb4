//! Exact rational polyhedra.
//!
//! Polyhedra are stored by inequalities (`⟨u, normal⟩ ≥ offset`). Vertex
//! representations, volumes, projections and lattice-point counts are
//! derived on demand.

mod dd;
mod lattice;
mod project;
mod volume;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linalg;
use crate::lp::{self, LpOutcome, Sense};
use crate::scalar::{self, dot_int_rat};
use crate::Rational;

pub use lattice::{count_lattice_difference, lattice_points};
pub use volume::{volume_bounded, volume_of_difference, DifferencePlan};

/// Largest ambient dimension accepted by vertex enumeration.
pub const MAX_VERTEX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("dimension {0} exceeds the vertex-enumeration cap of {MAX_VERTEX_DIM}")]
    DimensionCap(usize),
    #[error("polyhedron contains a line")]
    NotPointed,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("recession cones of the nested polyhedra differ")]
    RecessionMismatch,
    #[error("inner polyhedron is not contained in the outer one")]
    NotNested,
    #[error("difference of the polyhedra is unbounded")]
    UnboundedDifference,
    #[error("generators do not span a full-dimensional polyhedron")]
    NotFullDimensional,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("halfspace normal is zero")]
    ZeroNormal,
    #[error("lattice enumeration exceeds machine integer range")]
    Overflow,
}

impl GeometryError {
    pub fn name(&self) -> &'static str {
        match self {
            GeometryError::EmptyPolyhedron => "EmptyPolyhedron",
            GeometryError::DimensionCap(_) => "DimensionCap",
            GeometryError::NotPointed => "NotPointed",
            GeometryError::Unbounded => "Unbounded",
            GeometryError::RecessionMismatch => "RecessionMismatch",
            GeometryError::NotNested => "NotNested",
            GeometryError::UnboundedDifference => "UnboundedDifference",
            GeometryError::NotFullDimensional => "NotFullDimensional",
            GeometryError::DimensionMismatch { .. } => "DimensionMismatch",
            GeometryError::ZeroNormal => "ZeroNormal",
            GeometryError::Overflow => "Overflow",
        }
    }
}

pub type Result<T> = std::result::Result<T, GeometryError>;

/// `⟨u, normal⟩ ≥ offset` with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    normal: Vec<BigInt>,
    offset: Rational,
}

impl Halfspace {
    /// Rescales by a positive factor so the normal becomes primitive.
    pub fn new(normal: Vec<BigInt>, offset: Rational) -> Result<Self> {
        let prim = scalar::primitive_int(&normal).ok_or(GeometryError::ZeroNormal)?;
        let scale = normal
            .iter()
            .zip(&prim)
            .find(|(_, p)| !p.is_zero())
            .map(|(n, p)| Rational::new(n.clone(), p.clone()))
            .expect("nonzero normal");
        Ok(Halfspace { normal: prim, offset: offset / scale })
    }

    pub fn from_i64(normal: &[i64], offset: Rational) -> Result<Self> {
        Self::new(normal.iter().map(|&v| BigInt::from(v)).collect(), offset)
    }

    pub fn from_rational(normal: &[Rational], offset: Rational) -> Result<Self> {
        let den = scalar::common_denominator(normal);
        let ints = normal.iter().map(|q| (q * &den).to_integer()).collect();
        Self::new(ints, offset * Rational::from_integer(den))
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn value_at(&self, u: &[Rational]) -> Rational {
        dot_int_rat(&self.normal, u)
    }

    pub fn contains(&self, u: &[Rational]) -> bool {
        self.value_at(u) >= self.offset
    }

    pub fn is_tight(&self, u: &[Rational]) -> bool {
        self.value_at(u) == self.offset
    }

    /// The complementary closed halfspace `⟨u, normal⟩ ≤ offset`.
    pub fn flipped(&self) -> Self {
        Halfspace {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -self.offset.clone(),
        }
    }

    pub fn scaled(&self, m: &Rational) -> Self {
        Halfspace { normal: self.normal.clone(), offset: &self.offset * m }
    }

    fn normal_rational(&self) -> Vec<Rational> {
        self.normal.iter().cloned().map(Rational::from_integer).collect()
    }

    fn as_constraint(&self) -> lp::Constraint<Rational> {
        (self.normal_rational(), self.offset.clone())
    }
}

/// Minimal vertex/ray description of a pointed polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRep {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<BigInt>>,
}

impl VRep {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    halfspaces: Vec<Halfspace>,
}

impl Polyhedron {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        if let Some(h) = halfspaces.iter().find(|h| h.dim() != dim) {
            return Err(GeometryError::DimensionMismatch { expected: dim, got: h.dim() });
        }
        Ok(Polyhedron { dim, halfspaces })
    }

    /// Builds from integer rows; `rows[i]·u ≥ offsets[i]`.
    pub fn from_rows(rows: &[Vec<i64>], offsets: &[Rational]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        let hs = rows
            .iter()
            .zip(offsets)
            .map(|(r, b)| Halfspace::from_i64(r, b.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, hs)
    }

    /// The non-negative orthant of `ℝⁿ`.
    pub fn orthant(dim: usize) -> Self {
        let hs = (0..dim)
            .map(|i| {
                let mut e = vec![BigInt::zero(); dim];
                e[i] = BigInt::from(1);
                Halfspace::new(e, Rational::zero()).expect("unit normal")
            })
            .collect();
        Polyhedron { dim, halfspaces: hs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains_point(&self, u: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(u))
    }

    pub fn with_halfspace(&self, h: Halfspace) -> Self {
        let mut out = self.clone();
        out.halfspaces.push(h);
        out
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Self> {
        if other.dim != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut out = self.clone();
        out.halfspaces.extend(other.halfspaces.iter().cloned());
        Ok(out)
    }

    /// `m·P` for `m > 0`.
    pub fn scaled(&self, m: &Rational) -> Self {
        assert!(m.is_positive(), "scale factor must be positive");
        Polyhedron {
            dim: self.dim,
            halfspaces: self.halfspaces.iter().map(|h| h.scaled(m)).collect(),
        }
    }

    pub fn recession_cone(&self) -> Self {
        Polyhedron {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace { normal: h.normal.clone(), offset: Rational::zero() })
                .collect(),
        }
    }

    fn constraints(&self) -> Vec<lp::Constraint<Rational>> {
        self.halfspaces.iter().map(Halfspace::as_constraint).collect()
    }

    pub fn lp_optimize(&self, objective: &[Rational], sense: Sense) -> LpOutcome<Rational> {
        lp::optimize(objective, &self.constraints(), sense)
    }

    pub fn is_empty(&self) -> bool {
        let zero = vec![Rational::zero(); self.dim];
        !self.lp_optimize(&zero, Sense::Minimize).is_feasible()
    }

    /// Whether every point of `self` satisfies `h` (vacuously true when empty).
    pub fn implies(&self, h: &Halfspace) -> bool {
        match self.lp_optimize(&h.normal_rational(), Sense::Minimize) {
            LpOutcome::Optimal { value, .. } => value >= h.offset,
            LpOutcome::Unbounded => false,
            LpOutcome::Infeasible => true,
        }
    }

    /// `other ⊆ self` as point sets.
    pub fn contains_polyhedron(&self, other: &Polyhedron) -> bool {
        self.halfspaces.iter().all(|h| other.implies(h))
    }

    pub fn same_point_set(&self, other: &Polyhedron) -> bool {
        self.contains_polyhedron(other) && other.contains_polyhedron(self)
    }

    /// Rank of the normal vectors; equal to `dim` iff the recession cone is pointed.
    pub fn normal_rank(&self) -> usize {
        let rows: Vec<Vec<Rational>> =
            self.halfspaces.iter().map(Halfspace::normal_rational).collect();
        linalg::rank(&rows)
    }

    /// Drops halfspaces implied by the others, one LP each, in order.
    pub fn without_redundancy(&self) -> Self {
        let mut kept = self.deduplicated().halfspaces;
        let mut i = 0;
        while i < kept.len() {
            let h = kept[i].clone();
            let rest = Polyhedron {
                dim: self.dim,
                halfspaces: kept.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect(),
            };
            if rest.implies(&h) {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Polyhedron { dim: self.dim, halfspaces: kept }
    }

    /// Sorts halfspaces and keeps the tightest offset per normal.
    pub fn deduplicated(&self) -> Self {
        let mut hs = self.halfspaces.clone();
        hs.sort_by(|a, b| a.normal.cmp(&b.normal).then(b.offset.cmp(&a.offset)));
        hs.dedup_by(|later, first| later.normal == first.normal);
        Polyhedron { dim: self.dim, halfspaces: hs }
    }

    pub fn vertex_enumerate(&self) -> Result<VRep> {
        if self.dim > MAX_VERTEX_DIM {
            return Err(GeometryError::DimensionCap(self.dim));
        }
        if self.is_empty() {
            return Err(GeometryError::EmptyPolyhedron);
        }
        dd::vertex_enumerate(self)
    }

    /// `conv(vertices) + cone(rays)` as a polyhedron.
    pub fn from_vrep(dim: usize, vrep: &VRep) -> Result<Self> {
        if dim > MAX_VERTEX_DIM {
            return Err(GeometryError::DimensionCap(dim));
        }
        dd::facets_of_hull(dim, vrep)
    }

    pub fn project_out(&self, coord: usize) -> Result<Self> {
        project::project_out(self, coord)
    }

    /// `P + ℝ≥0·direction`, by lifting and eliminating the ray parameter.
    pub fn slide(&self, direction: &[BigInt]) -> Result<Self> {
        project::slide(self, direction)
    }

    /// Re-embeds a polyhedron of dimension `dim − 1` by inserting a zero
    /// coefficient at `coord` (the cylinder over it).
    pub fn lift(&self, coord: usize) -> Self {
        Polyhedron {
            dim: self.dim + 1,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| {
                    let mut n = h.normal.clone();
                    n.insert(coord, BigInt::zero());
                    Halfspace { normal: n, offset: h.offset.clone() }
                })
                .collect(),
        }
    }
}

pub(crate) fn cmp_vec(a: &[Rational], b: &[Rational]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}
