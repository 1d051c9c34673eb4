//! Exact Euclidean volumes of polytopes and of co-bounded differences.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{GeometryError, Halfspace, Polyhedron, Result, VRep};
use crate::linalg;
use crate::lp::{LpOutcome, Sense};
use crate::scalar;
use crate::Rational;

fn affine_rank(points: &[&Vec<Rational>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let rows: Vec<Vec<Rational>> =
        rest.iter().map(|p| p.iter().zip(first.iter()).map(|(x, y)| x - y).collect()).collect();
    linalg::rank(&rows)
}

/// Pulling triangulation of the face spanned by `face`, of dimension `d`.
fn triangulate(
    verts: &[Vec<Rational>],
    tight: &[Vec<usize>],
    face: &[usize],
    d: usize,
    out: &mut Vec<Vec<usize>>,
    prefix: &mut Vec<usize>,
) {
    if d == 0 {
        let mut s = prefix.clone();
        s.push(face[0]);
        out.push(s);
        return;
    }
    let apex = face[0];
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for t in tight {
        let sub: Vec<usize> = face.iter().copied().filter(|i| t.binary_search(i).is_ok()).collect();
        if sub.len() < d || sub.len() == face.len() || sub.contains(&apex) || facets.contains(&sub) {
            continue;
        }
        let pts: Vec<&Vec<Rational>> = sub.iter().map(|&i| &verts[i]).collect();
        if affine_rank(&pts) == d - 1 {
            facets.push(sub);
        }
    }
    prefix.push(apex);
    for f in &facets {
        triangulate(verts, tight, f, d - 1, out, prefix);
    }
    prefix.pop();
}

fn simplex_volume(verts: &[Vec<Rational>], simplex: &[usize]) -> Rational {
    let base = &verts[simplex[0]];
    let rows: Vec<Vec<Rational>> = simplex[1..]
        .iter()
        .map(|&i| verts[i].iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    linalg::determinant(&rows).abs()
}

fn polytope_volume(p: &Polyhedron, vrep: &VRep) -> Rational {
    let n = p.dim();
    let verts = &vrep.vertices;
    let all: Vec<&Vec<Rational>> = verts.iter().collect();
    if affine_rank(&all) < n {
        return Rational::zero();
    }
    let tight: Vec<Vec<usize>> = p
        .halfspaces()
        .iter()
        .map(|h| (0..verts.len()).filter(|&i| h.is_tight(&verts[i])).collect())
        .collect();
    let face: Vec<usize> = (0..verts.len()).collect();
    let mut simplices = Vec::new();
    triangulate(verts, &tight, &face, n, &mut simplices, &mut Vec::new());
    let total = simplices.iter().fold(Rational::zero(), |acc, s| acc + simplex_volume(verts, s));
    total / Rational::from_integer(scalar::factorial(n))
}

/// Euclidean volume of a bounded polyhedron; zero when it is not full-dimensional.
pub fn volume_bounded(p: &Polyhedron) -> Result<Rational> {
    let vrep = p.vertex_enumerate()?;
    if !vrep.is_bounded() {
        return Err(GeometryError::Unbounded);
    }
    Ok(polytope_volume(p, &vrep))
}

fn volume_or_zero(p: &Polyhedron) -> Result<Rational> {
    match volume_bounded(p) {
        Err(GeometryError::EmptyPolyhedron) => Ok(Rational::zero()),
        other => other,
    }
}

/// Bounded pieces covering `outer \ inner`, with a cap `⟨w,u⟩ ≤ c` containing them.
#[derive(Debug, Clone)]
pub struct DifferencePlan {
    pub regions: Vec<Polyhedron>,
    pub cap: Option<Halfspace>,
}

impl DifferencePlan {
    pub fn new(inner: &Polyhedron, outer: &Polyhedron) -> Result<Self> {
        let n = outer.dim();
        if inner.dim() != n {
            return Err(GeometryError::DimensionMismatch { expected: n, got: inner.dim() });
        }
        if outer.is_empty() {
            return Err(GeometryError::EmptyPolyhedron);
        }
        if !outer.contains_polyhedron(inner) {
            return Err(GeometryError::NotNested);
        }
        if outer.normal_rank() < n {
            return Err(GeometryError::NotPointed);
        }
        let rec = outer.recession_cone();
        for h in inner.halfspaces() {
            let obj: Vec<Rational> = h.normal().iter().cloned().map(Rational::from_integer).collect();
            if matches!(rec.lp_optimize(&obj, Sense::Minimize), LpOutcome::Unbounded) {
                return Err(GeometryError::RecessionMismatch);
            }
        }
        let mut w = vec![BigInt::zero(); n];
        for h in outer.halfspaces() {
            for (wi, ai) in w.iter_mut().zip(h.normal()) {
                *wi += ai;
            }
        }
        let w_rat: Vec<Rational> = w.iter().cloned().map(Rational::from_integer).collect();
        let mut regions = Vec::new();
        let mut top: Option<Rational> = None;
        for h in inner.halfspaces() {
            if outer.implies(h) {
                continue;
            }
            let region = outer.with_halfspace(h.flipped());
            match region.lp_optimize(&w_rat, Sense::Maximize) {
                LpOutcome::Infeasible => continue,
                LpOutcome::Unbounded => return Err(GeometryError::UnboundedDifference),
                LpOutcome::Optimal { value, .. } => {
                    if top.as_ref().is_none_or(|t| value > *t) {
                        top = Some(value);
                    }
                }
            }
            regions.push(region);
        }
        let cap = match top {
            None => None,
            Some(t) => {
                let neg_w: Vec<BigInt> = w.iter().map(|x| -x).collect();
                Some(Halfspace::new(neg_w, -(t + Rational::from_integer(BigInt::from(1))))?)
            }
        };
        Ok(DifferencePlan { regions, cap })
    }
}

/// `vol(outer \ inner)` for nested polyhedra with a common recession cone
/// whose difference is bounded.
pub fn volume_of_difference(inner: &Polyhedron, outer: &Polyhedron) -> Result<Rational> {
    let plan = DifferencePlan::new(inner, outer)?;
    let Some(cap) = plan.cap else {
        return Ok(Rational::zero());
    };
    let a = volume_or_zero(&outer.with_halfspace(cap.clone()))?;
    let b = volume_or_zero(&inner.intersect(outer)?.with_halfspace(cap))?;
    Ok(a - b)
}
