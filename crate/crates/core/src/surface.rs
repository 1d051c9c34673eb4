//! Zariski decompositions on negative-definite exceptional lattices and on
//! Néron–Severi lattices of projective surfaces.

use thiserror::Error;

use crate::linalg::{self, Inertia, Matrix};
use crate::lp::{self, Sense};
use crate::scalar::{self, dot, Field};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {index}: self-intersection must be at most -1")]
    InvalidVertex { index: usize },
    #[error("edge {index} is a loop, has zero multiplicity or an unknown endpoint")]
    InvalidEdge { index: usize },
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative part has a negative coefficient")]
    NegativeCoefficient,
    #[error("support iteration exceeded {0} rounds")]
    NonTermination(usize),
    #[error("lattice signature is ({}, {}) with {} null directions, expected (1, ρ-1)", .0.positive, .0.negative, .0.zero)]
    Signature(Inertia),
    #[error("invalid surface model: {0}")]
    InvalidModel(String),
}

impl SurfaceError {
    pub fn name(&self) -> &'static str {
        match self {
            SurfaceError::EmptyGraph => "EmptyGraph",
            SurfaceError::InvalidVertex { .. } => "InvalidVertex",
            SurfaceError::InvalidEdge { .. } => "InvalidEdge",
            SurfaceError::NotNegativeDefinite => "NotNegativeDefinite",
            SurfaceError::DimensionMismatch { .. } => "DimensionMismatch",
            SurfaceError::NegativeCoefficient => "NegativeCoefficient",
            SurfaceError::NonTermination(_) => "NonTermination",
            SurfaceError::Signature(_) => "SignatureMismatch",
            SurfaceError::InvalidModel(_) => "InvalidModel",
        }
    }
}

pub type Result<T> = std::result::Result<T, SurfaceError>;

/// Coefficients `x ≥ 0` of the negative part against curves with Gram matrix
/// `gram`, where `rhs_j = D·C_j`.
///
/// The support grows by every violated index per round, so at most `ρ`
/// rounds are needed. On return `rhs − gram·x ≥ 0`, with equality on the support.
pub fn negative_part<F: Field>(gram: &Matrix<F>, rhs: &[F]) -> Result<Vec<F>> {
    let r = rhs.len();
    let mut support: Vec<usize> = Vec::new();
    let mut x = vec![F::zero(); r];
    for _ in 0..=r {
        let pc: Vec<F> = (0..r).map(|j| rhs[j].clone() - dot(&gram[j], &x)).collect();
        let violators: Vec<usize> = (0..r).filter(|&j| pc[j].is_neg() && !support.contains(&j)).collect();
        let negative = x.iter().any(Field::is_neg);
        if violators.is_empty() {
            if negative {
                return Err(SurfaceError::NegativeCoefficient);
            }
            return Ok(x);
        }
        support.extend(violators);
        support.sort_unstable();
        let sub: Matrix<F> =
            support.iter().map(|&i| support.iter().map(|&j| gram[i][j].clone()).collect()).collect();
        let b: Vec<F> = support.iter().map(|&i| rhs[i].clone()).collect();
        let xs = linalg::solve(&sub, &b).ok_or(SurfaceError::NotNegativeDefinite)?;
        x = vec![F::zero(); r];
        for (k, &i) in support.iter().enumerate() {
            x[i] = xs[k].clone();
        }
    }
    Err(SurfaceError::NonTermination(r))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphVertex {
    pub self_int: i64,
    pub genus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub i: usize,
    pub j: usize,
    pub multiplicity: u64,
}

/// Weighted dual graph of a resolution of a normal surface singularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<GraphVertex>,
    edges: Vec<GraphEdge>,
    matrix: Matrix<Rational>,
}

/// `D = P + N` in exceptional coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition<F> {
    pub positive: Vec<F>,
    pub negative: Vec<F>,
}

impl DualGraph {
    pub fn new(vertices: Vec<GraphVertex>, edges: Vec<GraphEdge>) -> Result<Self> {
        let r = vertices.len();
        if r == 0 {
            return Err(SurfaceError::EmptyGraph);
        }
        let mut matrix = vec![vec![scalar::int(0); r]; r];
        for (index, v) in vertices.iter().enumerate() {
            if v.self_int > -1 {
                return Err(SurfaceError::InvalidVertex { index });
            }
            matrix[index][index] = scalar::int(v.self_int);
        }
        for (index, e) in edges.iter().enumerate() {
            if e.i == e.j || e.i >= r || e.j >= r || e.multiplicity == 0 {
                return Err(SurfaceError::InvalidEdge { index });
            }
            let m = scalar::int(e.multiplicity as i64);
            matrix[e.i][e.j] += &m;
            matrix[e.j][e.i] += &m;
        }
        if !linalg::is_negative_definite(&matrix) {
            return Err(SurfaceError::NotNegativeDefinite);
        }
        Ok(DualGraph { vertices, edges, matrix })
    }

    /// A single curve of genus `g` and self-intersection `−d`.
    pub fn single(self_int: i64, genus: u64) -> Result<Self> {
        Self::new(vec![GraphVertex { self_int, genus }], Vec::new())
    }

    /// A chain of `(−2)`-curves, the graph of an `A_k` singularity.
    pub fn chain(self_ints: &[i64]) -> Result<Self> {
        let vertices = self_ints.iter().map(|&s| GraphVertex { self_int: s, genus: 0 }).collect();
        let edges = (1..self_ints.len()).map(|k| GraphEdge { i: k - 1, j: k, multiplicity: 1 }).collect();
        Self::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn intersection_matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    /// `(K + E)·E_i = 2g_i − 2 + Σ_j E_j·E_i` over `j ≠ i`.
    pub fn log_canonical_intersections(&self) -> Vec<Rational> {
        let mut d: Vec<Rational> = self.vertices.iter().map(|v| scalar::int(2 * v.genus as i64 - 2)).collect();
        for e in &self.edges {
            let m = scalar::int(e.multiplicity as i64);
            d[e.i] += &m;
            d[e.j] += &m;
        }
        d
    }

    pub fn zariski_decompose(&self, d: &[Rational]) -> Result<ZariskiDecomposition<Rational>> {
        let r = self.vertices.len();
        if d.len() != r {
            return Err(SurfaceError::DimensionMismatch { expected: r, got: d.len() });
        }
        let z = linalg::solve(&self.matrix, d).ok_or(SurfaceError::NotNegativeDefinite)?;
        let n = negative_part(&self.matrix, d)?;
        let p: Vec<Rational> = z.iter().zip(&n).map(|(a, b)| a - b).collect();
        Ok(ZariskiDecomposition { positive: p, negative: n })
    }

    /// `−P·P` for the intersection vector `d`.
    pub fn divisor_local_volume(&self, d: &[Rational]) -> Result<Rational> {
        let zd = self.zariski_decompose(d)?;
        Ok(-linalg::bilinear(&self.matrix, &zd.positive, &zd.positive))
    }

    /// Volume of the singularity: the local volume of `K + E`.
    pub fn singularity_volume(&self) -> Result<Rational> {
        self.divisor_local_volume(&self.log_canonical_intersections())
    }
}

/// Numerical data of a projective surface: the intersection form on `N¹`
/// together with the classes needed to decide pseudo-effectivity.
///
/// The list of negative curves is trusted to be complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceLattice {
    gram: Matrix<Rational>,
    canonical: Vec<Rational>,
    ample: Vec<Rational>,
    negative_curves: Vec<Vec<Rational>>,
    psef_generators: Vec<Vec<Rational>>,
}

fn to_rat_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| scalar::int(x)).collect()
}

fn lift<F: Field>(v: &[Rational]) -> Vec<F> {
    v.iter().map(F::from_rational).collect()
}

fn lift_matrix<F: Field>(m: &[Vec<Rational>]) -> Matrix<F> {
    m.iter().map(|r| lift(r)).collect()
}

impl SurfaceLattice {
    pub fn new(
        gram: Vec<Vec<i64>>,
        canonical: Vec<i64>,
        ample: Vec<i64>,
        negative_curves: Vec<Vec<i64>>,
        psef_generators: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let rho = gram.len();
        let check = |v: &[i64]| {
            if v.len() == rho {
                Ok(())
            } else {
                Err(SurfaceError::DimensionMismatch { expected: rho, got: v.len() })
            }
        };
        if rho == 0 {
            return Err(SurfaceError::InvalidModel("empty lattice".into()));
        }
        for row in &gram {
            check(row)?;
        }
        for i in 0..rho {
            for j in 0..rho {
                if gram[i][j] != gram[j][i] {
                    return Err(SurfaceError::InvalidModel("intersection form is not symmetric".into()));
                }
            }
        }
        check(&canonical)?;
        check(&ample)?;
        for c in negative_curves.iter().chain(&psef_generators) {
            check(c)?;
        }
        let lattice = SurfaceLattice {
            gram: gram.iter().map(|r| to_rat_vec(r)).collect(),
            canonical: to_rat_vec(&canonical),
            ample: to_rat_vec(&ample),
            negative_curves: negative_curves.iter().map(|c| to_rat_vec(c)).collect(),
            psef_generators: psef_generators.iter().map(|c| to_rat_vec(c)).collect(),
        };
        let inertia = linalg::inertia(&lattice.gram);
        if inertia.positive != 1 || inertia.zero != 0 {
            return Err(SurfaceError::Signature(inertia));
        }
        if !lattice.pair(&lattice.ample, &lattice.ample).is_pos() {
            return Err(SurfaceError::InvalidModel("ample class has non-positive square".into()));
        }
        for c in &lattice.negative_curves {
            if !lattice.pair(c, c).is_neg() {
                return Err(SurfaceError::InvalidModel("declared negative curve has non-negative square".into()));
            }
            if !lattice.pair(&lattice.ample, c).is_pos() {
                return Err(SurfaceError::InvalidModel("ample class is not positive on a declared curve".into()));
            }
        }
        Ok(lattice)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn canonical(&self) -> &[Rational] {
        &self.canonical
    }

    pub fn ample(&self) -> &[Rational] {
        &self.ample
    }

    pub fn negative_curves(&self) -> &[Vec<Rational>] {
        &self.negative_curves
    }

    pub fn psef_generators(&self) -> &[Vec<Rational>] {
        &self.psef_generators
    }

    /// Round model: pseudo-effective cone `{D² ≥ 0, D·a ≥ 0}`.
    pub fn is_round(&self) -> bool {
        self.psef_generators.is_empty()
    }

    pub fn pair<F: Field>(&self, x: &[F], y: &[F]) -> F {
        linalg::bilinear(&lift_matrix::<F>(&self.gram), x, y)
    }

    fn check_len<F>(&self, d: &[F]) -> Result<()> {
        if d.len() == self.rank() {
            Ok(())
        } else {
            Err(SurfaceError::DimensionMismatch { expected: self.rank(), got: d.len() })
        }
    }

    pub fn is_psef<F: Field>(&self, d: &[F]) -> Result<bool> {
        self.check_len(d)?;
        if self.is_round() {
            if !self.negative_curves.is_empty() {
                return Err(SurfaceError::InvalidModel(
                    "negative curves need a polyhedral pseudo-effective cone".into(),
                ));
            }
            let a = lift::<F>(&self.ample);
            return Ok(!self.pair(d, d).is_neg() && !self.pair(d, &a).is_neg());
        }
        Ok(in_cone(&self.psef_generators, d))
    }

    /// Positive part of the Zariski decomposition against the declared curves.
    pub fn positive_part<F: Field>(&self, d: &[F]) -> Result<Vec<F>> {
        self.check_len(d)?;
        let curves: Vec<Vec<F>> = self.negative_curves.iter().map(|c| lift(c)).collect();
        let gram: Matrix<F> =
            curves.iter().map(|c| curves.iter().map(|e| self.pair(c, e)).collect()).collect();
        let rhs: Vec<F> = curves.iter().map(|c| self.pair(d, c)).collect();
        let x = negative_part(&gram, &rhs)?;
        let mut p = d.to_vec();
        for (xk, c) in x.iter().zip(&curves) {
            for (pi, ci) in p.iter_mut().zip(c) {
                *pi = pi.clone() - xk.clone() * ci.clone();
            }
        }
        Ok(p)
    }

    /// `vol(D)`: zero off the pseudo-effective cone, `P²` on it.
    pub fn projective_volume<F: Field>(&self, d: &[F]) -> Result<F> {
        if !self.is_psef(d)? {
            return Ok(F::zero());
        }
        let p = self.positive_part(d)?;
        Ok(self.pair(&p, &p))
    }
}

/// Whether `d` is a non-negative combination of `gens`, by LP feasibility.
pub(crate) fn in_cone<F: Field>(gens: &[Vec<Rational>], d: &[F]) -> bool {
    let k = gens.len();
    let mut cons: Vec<lp::Constraint<F>> = Vec::new();
    for i in 0..d.len() {
        let row: Vec<F> = gens.iter().map(|g| F::from_rational(&g[i])).collect();
        cons.push((row.clone(), d[i].clone()));
        cons.push((row.into_iter().map(|x| -x).collect(), -d[i].clone()));
    }
    for j in 0..k {
        let mut e = vec![F::zero(); k];
        e[j] = F::one();
        cons.push((e, F::zero()));
    }
    lp::optimize(&vec![F::zero(); k], &cons, Sense::Minimize).is_feasible()
}
