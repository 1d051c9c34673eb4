//! Monomial ideals in a polynomial ring or an affine toric algebra.
//!
//! Ideals are stored by their minimal exponent vectors in lexicographic
//! order, so ideal equality is equality of generator lists.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::geometry::{self, GeometryError, Polyhedron, VRep};
use crate::toric::{PointedCone, ToricError};
use crate::{linalg, scalar, Rational, SequenceEntry};

/// Largest minimal generating set produced by [`MonomialIdeal::power`].
pub const MAX_GENERATORS: usize = 1_000_000;
/// Largest enumeration box for [`MonomialIdeal::h1_dim`].
pub const MAX_BOX_POINTS: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("generator {index} has the wrong length")]
    DimensionMismatch { index: usize },
    #[error("generator {index} lies outside the ambient cone")]
    OutsideAmbient { index: usize },
    #[error("minimal generating set has {0} elements, above the limit")]
    GeneratorBlowup(usize),
    #[error("enumeration box of {0} points exceeds the limit")]
    BoxOverflow(u128),
    #[error("operation needs an orthant or a unimodular simplicial cone")]
    UnsupportedAmbient,
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl MonomialError {
    pub fn name(&self) -> &'static str {
        match self {
            MonomialError::NoGenerators => "NoGenerators",
            MonomialError::DimensionMismatch { .. } => "DimensionMismatch",
            MonomialError::OutsideAmbient { .. } => "OutsideAmbient",
            MonomialError::GeneratorBlowup(_) => "GeneratorBlowup",
            MonomialError::BoxOverflow(_) => "BoxOverflow",
            MonomialError::UnsupportedAmbient => "UnsupportedAmbient",
            MonomialError::Toric(t) => t.name(),
            MonomialError::Geometry(g) => g.name(),
        }
    }
}

pub type Result<T> = std::result::Result<T, MonomialError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ambient {
    Orthant(usize),
    Cone(PointedCone),
}

impl Ambient {
    pub fn dim(&self) -> usize {
        match self {
            Ambient::Orthant(n) => *n,
            Ambient::Cone(c) => c.dim(),
        }
    }

    fn contains(&self, u: &[i64]) -> bool {
        match self {
            Ambient::Orthant(_) => u.iter().all(|&x| x >= 0),
            Ambient::Cone(c) => c.contains(&u.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()),
        }
    }

    /// `u ∈ g + S`, i.e. `g` divides `u`.
    fn divides(&self, g: &[i64], u: &[i64]) -> bool {
        let diff: Vec<i64> = u.iter().zip(g).map(|(a, b)| a - b).collect();
        self.contains(&diff)
    }

    /// Primitive ray generators of the ambient cone.
    fn rays(&self) -> Vec<Vec<BigInt>> {
        match self {
            Ambient::Orthant(n) => {
                (0..*n).map(|i| (0..*n).map(|j| BigInt::from(i64::from(i == j))).collect()).collect()
            }
            Ambient::Cone(c) => c.extreme_rays(),
        }
    }

    fn polyhedron(&self) -> Polyhedron {
        match self {
            Ambient::Orthant(n) => Polyhedron::orthant(*n),
            Ambient::Cone(c) => c.as_polyhedron(),
        }
    }
}

/// Convex hull of the exponents plus the ambient cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonRegion {
    pub region: Polyhedron,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ambient: Ambient,
    generators: Vec<Vec<i64>>,
}

fn minimalize(ambient: &Ambient, mut gens: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = (0..gens.len())
        .map(|i| !(0..gens.len()).any(|j| j != i && ambient.divides(&gens[j], &gens[i])))
        .collect();
    gens.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect()
}

impl MonomialIdeal {
    pub fn new(ambient: Ambient, generators: Vec<Vec<i64>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(MonomialError::NoGenerators);
        }
        let n = ambient.dim();
        for (index, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(MonomialError::DimensionMismatch { index });
            }
            if !ambient.contains(g) {
                return Err(MonomialError::OutsideAmbient { index });
            }
        }
        let generators = minimalize(&ambient, generators);
        Ok(MonomialIdeal { ambient, generators })
    }

    pub fn orthant(generators: Vec<Vec<i64>>) -> Result<Self> {
        let n = generators.first().map_or(0, Vec::len);
        Self::new(Ambient::Orthant(n), generators)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn contains(&self, u: &[i64]) -> bool {
        self.ambient.contains(u) && self.generators.iter().any(|g| self.ambient.divides(g, u))
    }

    fn with_generators(&self, gens: Vec<Vec<i64>>) -> Self {
        MonomialIdeal { ambient: self.ambient.clone(), generators: minimalize(&self.ambient, gens) }
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<Self> {
        let mut sums = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        let out = self.with_generators(sums);
        if out.generators.len() > MAX_GENERATORS {
            return Err(MonomialError::GeneratorBlowup(out.generators.len()));
        }
        Ok(out)
    }

    pub fn power(&self, p: u32) -> Result<Self> {
        assert!(p >= 1, "power must be positive");
        let mut acc = self.clone();
        for _ in 1..p {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Exponent change of basis to the orthant for a unimodular simplicial cone.
    fn orthant_chart(&self) -> Result<Option<OrthantChart>> {
        match &self.ambient {
            Ambient::Orthant(_) => Ok(None),
            Ambient::Cone(c) => OrthantChart::new(c).map(Some),
        }
    }

    fn in_chart<T>(&self, f: impl FnOnce(&MonomialIdeal) -> Result<T>) -> Result<(T, Option<OrthantChart>)> {
        match self.orthant_chart()? {
            None => Ok((f(self)?, None)),
            Some(chart) => {
                let gens = self.generators.iter().map(|g| chart.to_orthant(g)).collect();
                let flat = MonomialIdeal::new(Ambient::Orthant(self.dim()), gens)?;
                Ok((f(&flat)?, Some(chart)))
            }
        }
    }

    fn from_chart(&self, ideal: MonomialIdeal, chart: Option<OrthantChart>) -> Self {
        match chart {
            None => ideal,
            Some(c) => self.with_generators(ideal.generators.iter().map(|g| c.from_orthant(g)).collect()),
        }
    }

    /// `(I : 𝔪^∞) = ∩ (I : x_i^∞)`.
    pub fn saturation(&self) -> Result<Self> {
        let (sat, chart) = self.in_chart(|flat| Ok(flat.saturation_orthant()))?;
        Ok(self.from_chart(sat, chart))
    }

    fn saturation_orthant(&self) -> Self {
        let n = self.dim();
        let mut acc: Option<MonomialIdeal> = None;
        for i in 0..n {
            let zeroed = self
                .generators
                .iter()
                .map(|g| {
                    let mut h = g.clone();
                    h[i] = 0;
                    h
                })
                .collect();
            let colon = self.with_generators(zeroed);
            acc = Some(match acc {
                None => colon,
                Some(a) => a.intersect_orthant(&colon),
            });
        }
        acc.expect("positive dimension")
    }

    fn intersect_orthant(&self, other: &MonomialIdeal) -> Self {
        let mut lcms = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                lcms.push(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect());
            }
        }
        self.with_generators(lcms)
    }

    /// `dim (I : 𝔪^∞)/I`, by enumerating exponents in a box.
    pub fn h1_dim(&self) -> Result<u64> {
        Ok(self.in_chart(|flat| flat.h1_dim_orthant())?.0)
    }

    fn h1_dim_orthant(&self) -> Result<u64> {
        let n = self.dim();
        let sat = self.saturation_orthant();
        let mut bound = self
            .generators
            .iter()
            .chain(&sat.generators)
            .flat_map(|g| g.iter().copied())
            .max()
            .unwrap_or(0)
            .max(1);
        loop {
            let side = bound as u128 + 1;
            let points = side.checked_pow(n as u32).unwrap_or(u128::MAX);
            if points > MAX_BOX_POINTS {
                return Err(MonomialError::BoxOverflow(points));
            }
            let mut count = 0u64;
            let mut on_boundary = false;
            let mut u = vec![0i64; n];
            loop {
                if sat.contains(&u) && !self.contains(&u) {
                    count += 1;
                    on_boundary |= u.iter().any(|&x| x == bound);
                }
                let mut k = 0;
                while k < n && u[k] == bound {
                    u[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
                u[k] += 1;
            }
            if !on_boundary {
                return Ok(count);
            }
            bound *= 2;
        }
    }

    pub fn newton_region(&self) -> Result<NewtonRegion> {
        let vertices: Vec<Vec<Rational>> =
            self.generators.iter().map(|g| g.iter().map(|&x| scalar::int(x)).collect()).collect();
        let region = Polyhedron::from_vrep(self.dim(), &VRep { vertices, rays: self.ambient.rays() })?;
        Ok(NewtonRegion { region })
    }

    /// `P̃`: the intersection of the slides of the Newton region along every
    /// negative ambient ray, cut back to the ambient cone.
    pub fn saturated_region(&self) -> Result<Polyhedron> {
        let p = self.newton_region()?.region;
        let cone = self.ambient.polyhedron();
        if self.dim() == 1 {
            return Ok(cone);
        }
        let mut acc = cone;
        for (i, tau) in self.ambient.rays().iter().enumerate() {
            let slid = match self.ambient {
                Ambient::Orthant(_) => p.project_out(i)?.lift(i),
                Ambient::Cone(_) => p.slide(&tau.iter().map(|x| -x).collect::<Vec<_>>())?,
            };
            acc = acc.intersect(&slid)?;
        }
        Ok(acc.without_redundancy())
    }

    /// `n!·vol(P̃ ∖ P)`.
    pub fn asymptotic_multiplicity(&self) -> Result<Rational> {
        let p = self.newton_region()?.region;
        let tilde = self.saturated_region()?;
        let vol = geometry::volume_of_difference(&p, &tilde)?;
        Ok(vol * Rational::from_integer(scalar::factorial(self.dim())))
    }

    /// `(p, h¹(I^p), n!·h¹/pⁿ)` for `p = 1..=p_max`.
    pub fn multiplicity_sequence(&self, p_max: u32) -> Result<Vec<SequenceEntry>> {
        let n = self.dim();
        let fact = Rational::from_integer(scalar::factorial(n));
        let mut out = Vec::new();
        let mut power = self.clone();
        for p in 1..=p_max {
            if p > 1 {
                power = power.product(self)?;
            }
            let h1 = power.h1_dim()?;
            let value = Rational::from_integer(BigInt::from(h1));
            let pr = scalar::int(i64::from(p));
            let normalized = &value * &fact / scalar::pow(&pr, n);
            out.push(SequenceEntry { index: u64::from(p), value, normalized });
        }
        Ok(out)
    }
}

/// Integer change of coordinates sending a unimodular simplicial cone to the orthant.
#[derive(Debug, Clone)]
struct OrthantChart {
    basis: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
}

impl OrthantChart {
    fn new(cone: &PointedCone) -> Result<Self> {
        let rays = cone.extreme_rays();
        let n = cone.dim();
        if rays.len() != n {
            return Err(MonomialError::UnsupportedAmbient);
        }
        // columns are the rays
        let basis: Vec<Vec<Rational>> =
            (0..n).map(|i| rays.iter().map(|r| Rational::from_integer(r[i].clone())).collect()).collect();
        let det = linalg::determinant(&basis);
        if det != scalar::int(1) && det != scalar::int(-1) {
            return Err(MonomialError::UnsupportedAmbient);
        }
        let inverse = linalg::inverse(&basis).expect("unimodular");
        Ok(OrthantChart { basis, inverse })
    }

    fn apply(m: &[Vec<Rational>], u: &[i64]) -> Vec<i64> {
        let v: Vec<Rational> = u.iter().map(|&x| scalar::int(x)).collect();
        linalg::mat_vec(m, &v)
            .iter()
            .map(|q| q.to_integer().to_i64().expect("exponent fits in i64"))
            .collect()
    }

    fn to_orthant(&self, u: &[i64]) -> Vec<i64> {
        Self::apply(&self.inverse, u)
    }

    fn from_orthant(&self, c: &[i64]) -> Vec<i64> {
        Self::apply(&self.basis, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn ideal(gens: &[[i64; 2]]) -> MonomialIdeal {
        MonomialIdeal::orthant(gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn generators_are_minimal_and_sorted() {
        let i = ideal(&[[1, 3], [3, 0], [4, 4], [3, 0]]);
        assert_eq!(i.generators(), &[vec![1, 3], vec![3, 0]]);
    }

    #[test]
    fn powers() {
        let i = ideal(&[[3, 0], [1, 3]]);
        assert_eq!(i.power(2).unwrap().generators(), &[vec![2, 6], vec![4, 3], vec![6, 0]]);
        let m = ideal(&[[1, 0], [0, 1]]);
        assert_eq!(m.power(2).unwrap().generators(), &[vec![0, 2], vec![1, 1], vec![2, 0]]);
        let g = ideal(&[[2, 5]]);
        assert_eq!(g.power(3).unwrap().generators(), &[vec![6, 15]]);
    }

    #[test]
    fn saturations() {
        assert_eq!(ideal(&[[1, 0], [0, 1]]).saturation().unwrap().generators(), &[vec![0, 0]]);
        assert_eq!(ideal(&[[3, 0], [1, 3]]).saturation().unwrap().generators(), &[vec![1, 0]]);
        let g = ideal(&[[2, 1]]);
        assert_eq!(g.saturation().unwrap(), g);
    }

    #[test]
    fn h1_dimensions() {
        assert_eq!(ideal(&[[3, 0], [1, 3]]).h1_dim().unwrap(), 6);
        assert_eq!(ideal(&[[1, 0], [0, 1]]).power(3).unwrap().h1_dim().unwrap(), 6);
        assert_eq!(ideal(&[[1, 2]]).h1_dim().unwrap(), 0);
    }

    #[test]
    fn asymptotic_values() {
        assert_eq!(ideal(&[[3, 0], [1, 3]]).asymptotic_multiplicity().unwrap(), int(6));
        assert_eq!(ideal(&[[2, 0], [0, 3]]).asymptotic_multiplicity().unwrap(), int(6));
        assert_eq!(ideal(&[[2, 1]]).asymptotic_multiplicity().unwrap(), int(0));
    }

    #[test]
    fn unimodular_cone_matches_orthant() {
        // σ spanned by (1,0) and (1,1) is unimodular
        let cone = PointedCone::from_i64(&[vec![1, 0], vec![1, 1]]).unwrap();
        // (2,0) = 2·(1,0), (1,1): images of (2,0) and (0,1)
        let i = MonomialIdeal::new(Ambient::Cone(cone), vec![vec![2, 0], vec![1, 1]]).unwrap();
        assert_eq!(i.h1_dim().unwrap(), 2);
        assert_eq!(i.saturation().unwrap().generators(), &[vec![0, 0]]);
        assert_eq!(i.asymptotic_multiplicity().unwrap(), int(2));
    }

    #[test]
    fn non_unimodular_cone_is_unsupported_for_counts() {
        let cone = PointedCone::from_i64(&[vec![1, 0], vec![1, 2]]).unwrap();
        let i = MonomialIdeal::new(Ambient::Cone(cone), vec![vec![2, 0], vec![1, 2]]).unwrap();
        assert_eq!(i.h1_dim(), Err(MonomialError::UnsupportedAmbient));
        assert!(i.asymptotic_multiplicity().is_ok());
    }
}
