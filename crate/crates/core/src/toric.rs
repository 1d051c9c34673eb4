//! Local volumes of torus-invariant divisors on toric modifications.
//!
//! A [`ToricDatum`] is a full-dimensional pointed cone `σ ⊂ N_ℝ` with the rays of
//! a refinement; a [`ToricDivisor`] attaches a rational coefficient to every
//! ray. The local volume at the torus-fixed point is `n!·vol(P'_D ∖ P_D)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geometry::{self, GeometryError, Halfspace, Polyhedron, VRep};
use crate::lp::Sense;
use crate::scalar::{self, dot_int_rat};
use crate::{linalg, Rational, SequenceEntry};

/// Box doublings tried before the Newton-region hull is declared unstable.
pub const HULL_DOUBLINGS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("cone needs dimension at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("generator or ray {index} has the wrong length")]
    DimensionMismatch { index: usize },
    #[error("zero vector given as a ray")]
    ZeroRay,
    #[error("cone generators do not span the ambient space")]
    NotFullDimensional,
    #[error("cone contains a line")]
    NotPointed,
    #[error("ray {index} does not lie in the cone")]
    NotInCone { index: usize },
    #[error("extreme ray {ray:?} of the cone is missing from the ray list")]
    MissingExtremeRay { ray: Vec<BigInt> },
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("Newton-region hull at level {level} did not stabilize after {HULL_DOUBLINGS} doublings")]
    HullUnstable { level: u64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl ToricError {
    pub fn name(&self) -> &'static str {
        match self {
            ToricError::DimensionTooSmall(_) => "DimensionTooSmall",
            ToricError::DimensionMismatch { .. } => "DimensionMismatch",
            ToricError::ZeroRay => "ZeroRay",
            ToricError::NotFullDimensional => "NotFullDimensional",
            ToricError::NotPointed => "NotPointed",
            ToricError::NotInCone { .. } => "NotInCone",
            ToricError::MissingExtremeRay { .. } => "MissingExtremeRay",
            ToricError::CoefficientCount { .. } => "CoefficientCount",
            ToricError::HullUnstable { .. } => "HullUnstable",
            ToricError::Geometry(g) => g.name(),
        }
    }
}

pub type Result<T> = std::result::Result<T, ToricError>;

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn to_rat(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A full-dimensional pointed rational cone given by primitive generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedCone {
    dim: usize,
    generators: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
}

impl PointedCone {
    pub fn new(generators: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = generators.first().map_or(0, Vec::len);
        if dim < 2 {
            return Err(ToricError::DimensionTooSmall(dim));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for (index, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(ToricError::DimensionMismatch { index });
            }
            gens.push(scalar::primitive_int(g).ok_or(ToricError::ZeroRay)?);
        }
        let rows: Vec<Vec<Rational>> = gens.iter().map(|g| to_rat(g)).collect();
        if linalg::rank(&rows) < dim {
            return Err(ToricError::NotFullDimensional);
        }
        // pointed iff some w is strictly positive on every generator
        let cons: Vec<_> = rows.iter().map(|g| (g.clone(), Rational::one())).collect();
        let zero = vec![Rational::zero(); dim];
        if !crate::lp::optimize(&zero, &cons, Sense::Minimize).is_feasible() {
            return Err(ToricError::NotPointed);
        }
        let dual = Self::dual_of(dim, &gens)?;
        let facets = dual.vertex_enumerate()?.rays;
        Ok(PointedCone { dim, generators: gens, facets })
    }

    pub fn from_i64(generators: &[Vec<i64>]) -> Result<Self> {
        Self::new(generators.iter().map(|g| to_big(g)).collect())
    }

    /// The non-negative orthant of `ℝⁿ`.
    pub fn orthant(dim: usize) -> Result<Self> {
        Self::new((0..dim).map(|i| (0..dim).map(|j| BigInt::from(i64::from(i == j))).collect()).collect())
    }

    fn dual_of(dim: usize, gens: &[Vec<BigInt>]) -> Result<Polyhedron> {
        let hs = gens
            .iter()
            .map(|g| Halfspace::new(g.clone(), Rational::zero()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Polyhedron::new(dim, hs)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Inward facet normals, i.e. the extreme rays of the dual cone.
    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    /// `σ^∨ = {u : ⟨u, g⟩ ≥ 0 for every generator g}`.
    pub fn dual(&self) -> Polyhedron {
        Self::dual_of(self.dim, &self.generators).expect("validated generators")
    }

    /// The cone itself as a polyhedron, cut out by its facets.
    pub fn as_polyhedron(&self) -> Polyhedron {
        let hs = self
            .facets
            .iter()
            .map(|f| Halfspace::new(f.clone(), Rational::zero()).expect("nonzero facet"))
            .collect();
        Polyhedron::new(self.dim, hs).expect("consistent dimension")
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.facets.iter().all(|f| !dot(f, v).is_negative())
    }

    /// Whether `v` spans an extreme ray of the cone.
    pub fn is_extreme(&self, v: &[BigInt]) -> bool {
        if !self.contains(v) || v.iter().all(Zero::is_zero) {
            return false;
        }
        let tight: Vec<Vec<Rational>> =
            self.facets.iter().filter(|f| dot(f, v).is_zero()).map(|f| to_rat(f)).collect();
        linalg::rank(&tight) == self.dim - 1
    }

    /// Primitive generators of the extreme rays, sorted.
    pub fn extreme_rays(&self) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = self.generators.iter().filter(|g| self.is_extreme(g)).cloned().collect();
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RayTag {
    /// Spans an extreme ray of `σ`.
    Boundary,
    /// In the relative interior of a proper face of dimension at least 2.
    FaceInterior,
    /// Strictly inside every facet of `σ`.
    Interior,
}

/// The cone `σ` together with all rays of a refinement `Σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricDatum {
    sigma: PointedCone,
    rays: Vec<Vec<BigInt>>,
    tags: Vec<RayTag>,
}

impl ToricDatum {
    pub fn new(sigma: PointedCone, rays: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = sigma.dim();
        let mut prim = Vec::with_capacity(rays.len());
        for (index, r) in rays.iter().enumerate() {
            if r.len() != n {
                return Err(ToricError::DimensionMismatch { index });
            }
            prim.push(scalar::primitive_int(r).ok_or(ToricError::ZeroRay)?);
        }
        let tags = classify_rays(&sigma, &prim)?;
        for e in sigma.extreme_rays() {
            if !prim.contains(&e) {
                return Err(ToricError::MissingExtremeRay { ray: e });
            }
        }
        Ok(ToricDatum { sigma, rays: prim, tags })
    }

    pub fn from_i64(sigma: &[Vec<i64>], rays: &[Vec<i64>]) -> Result<Self> {
        Self::new(PointedCone::from_i64(sigma)?, rays.iter().map(|r| to_big(r)).collect())
    }

    pub fn sigma(&self) -> &PointedCone {
        &self.sigma
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn tags(&self) -> &[RayTag] {
        &self.tags
    }

    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.rays.len()).filter(|&i| self.tags[i] == RayTag::Interior).collect()
    }
}

/// Tags each ray against the facets of `σ`.
pub fn classify_rays(sigma: &PointedCone, rays: &[Vec<BigInt>]) -> Result<Vec<RayTag>> {
    rays.iter()
        .enumerate()
        .map(|(index, r)| {
            let vals: Vec<BigInt> = sigma.facets().iter().map(|f| dot(f, r)).collect();
            if vals.iter().any(Signed::is_negative) {
                Err(ToricError::NotInCone { index })
            } else if vals.iter().all(Signed::is_positive) {
                Ok(RayTag::Interior)
            } else if sigma.is_extreme(r) {
                Ok(RayTag::Boundary)
            } else {
                Ok(RayTag::FaceInterior)
            }
        })
        .collect()
}

/// `D = Σ a_i D_i` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricDivisor {
    datum: ToricDatum,
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectivityReport {
    pub lies_over_x: bool,
    pub effective: bool,
    pub volume_zero: bool,
}

impl ToricDivisor {
    pub fn new(datum: ToricDatum, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != datum.rays.len() {
            return Err(ToricError::CoefficientCount { expected: datum.rays.len(), got: coeffs.len() });
        }
        Ok(ToricDivisor { datum, coeffs })
    }

    pub fn datum(&self) -> &ToricDatum {
        &self.datum
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        ToricDivisor { datum: self.datum.clone(), coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn is_integral_at(&self, m: u64) -> bool {
        let m = Rational::from_integer(BigInt::from(m));
        self.coeffs.iter().all(|a| scalar::is_integral(&(a * &m)))
    }

    /// `(P_D, P'_D)`: all rays, and all rays except the interior ones.
    pub fn polyhedra(&self) -> (Polyhedron, Polyhedron) {
        let n = self.datum.dim();
        let mut all = Vec::new();
        let mut outer = Vec::new();
        for ((v, a), tag) in self.datum.rays.iter().zip(&self.coeffs).zip(&self.datum.tags) {
            let h = Halfspace::new(v.clone(), -a.clone()).expect("primitive ray");
            if *tag != RayTag::Interior {
                outer.push(h.clone());
            }
            all.push(h);
        }
        (Polyhedron::new(n, all).expect("dimension"), Polyhedron::new(n, outer).expect("dimension"))
    }

    pub fn local_volume(&self) -> Result<Rational> {
        let (p, pp) = self.polyhedra();
        let vol = geometry::volume_of_difference(&p, &pp)?;
        Ok(vol * Rational::from_integer(scalar::factorial(self.datum.dim())))
    }

    /// `(m, h¹, n!·h¹/mⁿ)` for `m = 1..=m_max`, skipping levels where `m·D` is not integral.
    pub fn h1_sequence(&self, m_max: u64) -> Result<Vec<SequenceEntry>> {
        let (p, pp) = self.polyhedra();
        let n = self.datum.dim();
        let fact = Rational::from_integer(scalar::factorial(n));
        let mut out = Vec::new();
        for m in 1..=m_max {
            if !self.is_integral_at(m) {
                continue;
            }
            let mr = Rational::from_integer(BigInt::from(m));
            let count = geometry::count_lattice_difference(&p, &pp, &mr)?;
            let value = Rational::from_integer(BigInt::from(count));
            let normalized = &value * &fact / scalar::pow(&mr, n);
            out.push(SequenceEntry { index: m, value, normalized });
        }
        Ok(out)
    }

    pub fn effectivity_check(&self) -> Result<EffectivityReport> {
        let lies_over_x = self
            .coeffs
            .iter()
            .zip(&self.datum.tags)
            .all(|(a, t)| a.is_zero() || *t == RayTag::Interior);
        let effective = self.coeffs.iter().all(|a| !a.is_negative());
        let volume_zero = self.local_volume()?.is_zero();
        Ok(EffectivityReport { lies_over_x, effective, volume_zero })
    }

    /// `(p, mult_p, mult_p/pⁿ)` from Newton regions of the lattice points of `p·P_D`.
    pub fn fujita_sequence(&self, p_max: u64) -> Result<Vec<SequenceEntry>> {
        let n = self.datum.dim();
        let fact = Rational::from_integer(scalar::factorial(n));
        let mut out = Vec::new();
        for p in 1..=p_max {
            if !self.is_integral_at(p) {
                continue;
            }
            let (newton, saturated) = self.newton_regions(p)?;
            let vol = geometry::volume_of_difference(&newton, &saturated)?;
            let value = vol * &fact;
            let pr = Rational::from_integer(BigInt::from(p));
            let normalized = &value / scalar::pow(&pr, n);
            out.push(SequenceEntry { index: p, value, normalized });
        }
        Ok(out)
    }

    /// `N_p = conv(p·P_D ∩ M) + σ^∨` and its slide-saturation `∩ (N_p − ℝ≥0·τ_i)`.
    pub fn newton_regions(&self, p: u64) -> Result<(Polyhedron, Polyhedron)> {
        let n = self.datum.dim();
        let (pd, _) = self.polyhedra();
        let pp = pd.scaled(&Rational::from_integer(BigInt::from(p)));
        let taus = self.datum.sigma.facets().to_vec();
        let mut w = vec![BigInt::zero(); n];
        for g in self.datum.sigma.generators() {
            for (wi, gi) in w.iter_mut().zip(g) {
                *wi += gi;
            }
        }
        let top = pp
            .vertex_enumerate()?
            .vertices
            .iter()
            .map(|v| dot_int_rat(&w, v))
            .max()
            .expect("pointed polyhedron has a vertex");
        let step = taus.iter().map(|t| dot(t, &w)).max().unwrap_or_default();
        let mut cap = scalar::ceil(&top) + step + BigInt::one();

        let minimal_points = |cap: &BigInt| -> Result<Vec<Vec<i64>>> {
            let neg_w: Vec<BigInt> = w.iter().map(|x| -x).collect();
            let capped = pp.with_halfspace(Halfspace::new(neg_w, Rational::from_integer(-cap))?);
            let pts = geometry::lattice_points(&capped)?;
            Ok(pts
                .into_iter()
                .filter(|u| {
                    taus.iter().all(|t| {
                        let shifted: Vec<Rational> = u
                            .iter()
                            .zip(t)
                            .map(|(&x, ti)| Rational::from_integer(BigInt::from(x) - ti))
                            .collect();
                        !pp.contains_point(&shifted)
                    })
                })
                .collect())
        };

        for _ in 0..=HULL_DOUBLINGS {
            let pts = minimal_points(&cap)?;
            let vertices: Vec<Vec<Rational>> =
                pts.iter().map(|u| u.iter().map(|&x| scalar::int(x)).collect()).collect();
            let newton = Polyhedron::from_vrep(n, &VRep { vertices, rays: taus.clone() })?;
            let bigger = minimal_points(&(&cap * 2))?;
            let stable = bigger.iter().all(|u| {
                let q: Vec<Rational> = u.iter().map(|&x| scalar::int(x)).collect();
                newton.contains_point(&q)
            });
            if stable {
                let mut saturated: Option<Polyhedron> = None;
                for t in &taus {
                    let back: Vec<BigInt> = t.iter().map(|x| -x).collect();
                    let slid = newton.slide(&back)?;
                    saturated = Some(match saturated {
                        None => slid,
                        Some(s) => s.intersect(&slid)?,
                    });
                }
                let saturated = saturated.expect("cone has facets").without_redundancy();
                return Ok((newton, saturated));
            }
            cap *= 2;
        }
        Err(ToricError::HullUnstable { level: p })
    }
}
