//! Fourier–Motzkin elimination and Minkowski sums with a ray.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{GeometryError, Halfspace, Polyhedron, Result};
use crate::Rational;

pub(super) fn project_out(p: &Polyhedron, k: usize) -> Result<Polyhedron> {
    let n = p.dim();
    if k >= n {
        return Err(GeometryError::DimensionMismatch { expected: n, got: k + 1 });
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut rows: Vec<(Vec<BigInt>, Rational)> = Vec::new();
    for h in p.halfspaces() {
        let c = &h.normal()[k];
        if c.is_positive() {
            pos.push(h);
        } else if c.is_negative() {
            neg.push(h);
        } else {
            rows.push((h.normal().to_vec(), h.offset().clone()));
        }
    }
    for hp in &pos {
        for hn in &neg {
            let cp = hp.normal()[k].clone();
            let cn = -hn.normal()[k].clone();
            let normal: Vec<BigInt> =
                hp.normal().iter().zip(hn.normal()).map(|(a, b)| &cn * a + &cp * b).collect();
            let offset = hp.offset() * Rational::from_integer(cn.clone())
                + hn.offset() * Rational::from_integer(cp.clone());
            rows.push((normal, offset));
        }
    }
    let mut hs = Vec::new();
    for (mut normal, offset) in rows {
        normal.remove(k);
        if normal.iter().all(Zero::is_zero) {
            if offset.is_positive() {
                return Err(GeometryError::EmptyPolyhedron);
            }
            continue;
        }
        hs.push(Halfspace::new(normal, offset)?);
    }
    Ok(Polyhedron::new(n - 1, hs)?.without_redundancy())
}

pub(super) fn slide(p: &Polyhedron, dir: &[BigInt]) -> Result<Polyhedron> {
    let n = p.dim();
    if dir.len() != n {
        return Err(GeometryError::DimensionMismatch { expected: n, got: dir.len() });
    }
    let mut hs = Vec::with_capacity(p.halfspaces().len() + 1);
    for h in p.halfspaces() {
        let mut normal = h.normal().to_vec();
        let along: BigInt = h.normal().iter().zip(dir).map(|(a, d)| a * d).sum();
        normal.push(-along);
        hs.push(Halfspace::new(normal, h.offset().clone())?);
    }
    let mut lam = vec![BigInt::zero(); n + 1];
    lam[n] = BigInt::one();
    hs.push(Halfspace::new(lam, Rational::zero())?);
    project_out(&Polyhedron::new(n + 1, hs)?, n)
}
