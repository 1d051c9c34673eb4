//! Double description over the integers.
//!
//! [`extreme_rays`] computes the extreme rays of a pointed cone
//! `{x : R x ≥ 0}` given by integer rows. Vertex enumeration works on the
//! homogenisation of a polyhedron, and the hull of a V-representation on the
//! cone of valid inequalities.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{cmp_vec, GeometryError, Halfspace, Polyhedron, Result, VRep};
use crate::linalg;
use crate::scalar;
use crate::Rational;

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rational_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().cloned().map(Rational::from_integer).collect()).collect()
}

/// Extreme rays of `{x ∈ ℝᵈ : row·x ≥ 0 for every row}`, as primitive
/// integer vectors. Fails with `NotPointed` unless the rows have rank `d`.
pub(crate) fn extreme_rays(d: usize, rows: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    // greedy basis of d independent rows
    let mut basis: Vec<usize> = Vec::with_capacity(d);
    let mut chosen: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for (i, r) in rows.iter().enumerate() {
        if basis.len() == d {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(r.iter().cloned().map(Rational::from_integer).collect());
        if linalg::rank(&trial) == trial.len() {
            chosen = trial;
            basis.push(i);
        }
    }
    if basis.len() < d {
        return Err(GeometryError::NotPointed);
    }
    let inv = linalg::inverse(&chosen).expect("independent rows");
    let mut rays: Vec<Vec<BigInt>> = (0..d)
        .map(|k| {
            let col: Vec<Rational> = (0..d).map(|i| inv[i][k].clone()).collect();
            scalar::primitive_direction(&col).expect("nonzero column")
        })
        .collect();

    let nrows = rows.len();
    let mut order: Vec<usize> = basis.clone();
    order.extend((0..nrows).filter(|i| !basis.contains(i)));

    let mut zeros: Vec<Bits> = (0..d)
        .map(|k| {
            let mut b = Bits::new(nrows);
            for (j, &bi) in basis.iter().enumerate() {
                if j != k {
                    b.set(bi);
                }
            }
            b
        })
        .collect();

    for &ri in &order[d..] {
        let row = &rows[ri];
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, z) in zeros.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    z.set(ri);
                }
            }
            continue;
        }
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = zeros[p].and(&zeros[n]);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&k| k != p && k != n)
                    .all(|k| !common.is_subset_of(&zeros[k]));
                if !adjacent {
                    continue;
                }
                let combo: Vec<BigInt> = rays[n]
                    .iter()
                    .zip(&rays[p])
                    .map(|(xn, xp)| &vals[p] * xn - &vals[n] * xp)
                    .collect();
                let Some(prim) = scalar::primitive_int(&combo) else {
                    continue;
                };
                let mut z = common;
                z.set(ri);
                new_rays.push(prim);
                new_zeros.push(z);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_zeros = Vec::new();
        for (k, (r, mut z)) in rays.into_iter().zip(zeros).enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                z.set(ri);
            }
            kept_rays.push(r);
            kept_zeros.push(z);
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        rays = kept_rays;
        zeros = kept_zeros;
    }
    rays.sort();
    rays.dedup();
    Ok(rays)
}

pub(super) fn vertex_enumerate(p: &Polyhedron) -> Result<VRep> {
    let n = p.dim;
    // (u0, u) with q⟨a,u⟩ − num·u0 ≥ 0 for offset num/q, and u0 ≥ 0
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(p.halfspaces.len() + 1);
    let mut u0 = vec![BigInt::zero(); n + 1];
    u0[0] = BigInt::one();
    rows.push(u0);
    for h in &p.halfspaces {
        let q = h.offset.denom();
        let mut r = Vec::with_capacity(n + 1);
        r.push(-h.offset.numer());
        r.extend(h.normal.iter().map(|a| a * q));
        rows.push(r);
    }
    let rays = extreme_rays(n + 1, &rows)?;
    let mut vertices = Vec::new();
    let mut recession = Vec::new();
    for r in rays {
        if r[0].is_zero() {
            recession.push(r[1..].to_vec());
        } else {
            let den = &r[0];
            vertices.push(r[1..].iter().map(|x| Rational::new(x.clone(), den.clone())).collect::<Vec<_>>());
        }
    }
    if vertices.is_empty() {
        return Err(GeometryError::EmptyPolyhedron);
    }
    vertices.sort_by(|a, b| cmp_vec(a, b));
    vertices.dedup();
    recession.sort();
    recession.dedup();
    Ok(VRep { vertices, rays: recession })
}

pub(super) fn facets_of_hull(dim: usize, vrep: &VRep) -> Result<Polyhedron> {
    if vrep.vertices.is_empty() {
        return Err(GeometryError::EmptyPolyhedron);
    }
    for v in &vrep.vertices {
        if v.len() != dim {
            return Err(GeometryError::DimensionMismatch { expected: dim, got: v.len() });
        }
    }
    for r in &vrep.rays {
        if r.len() != dim {
            return Err(GeometryError::DimensionMismatch { expected: dim, got: r.len() });
        }
    }
    // (a, c) with ⟨a,v⟩ + c ≥ 0 on vertices and ⟨a,r⟩ ≥ 0 on rays
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for v in &vrep.vertices {
        let den = scalar::common_denominator(v);
        let mut r: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
        r.push(den);
        rows.push(r);
    }
    for ray in &vrep.rays {
        let mut r = ray.clone();
        r.push(BigInt::zero());
        rows.push(r);
    }
    if linalg::rank(&to_rational_rows(&rows)) < dim + 1 {
        return Err(GeometryError::NotFullDimensional);
    }
    let rays = extreme_rays(dim + 1, &rows)?;
    let mut hs = Vec::new();
    for y in rays {
        let (a, c) = y.split_at(dim);
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        hs.push(Halfspace::new(a.to_vec(), Rational::from_integer(-&c[0]))?);
    }
    hs.sort();
    hs.dedup();
    Polyhedron::new(dim, hs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn square_has_four_vertices() {
        let sq = Polyhedron::from_rows(
            &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            &[int(0), int(0), int(-1), int(-1)],
        )
        .unwrap();
        let v = sq.vertex_enumerate().unwrap();
        assert_eq!(v.vertices.len(), 4);
        assert!(v.rays.is_empty());
    }

    #[test]
    fn unbounded_region_has_rays() {
        // x ≥ 0, y ≥ 0, x + y ≥ 1
        let p = Polyhedron::from_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]], &[int(0), int(0), int(1)]).unwrap();
        let v = p.vertex_enumerate().unwrap();
        assert_eq!(v.vertices, vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(v.rays, vec![b(&[0, 1]), b(&[1, 0])]);
    }

    #[test]
    fn line_is_not_pointed() {
        let p = Polyhedron::from_rows(&[vec![1, 0]], &[int(0)]).unwrap();
        assert_eq!(p.vertex_enumerate(), Err(GeometryError::NotPointed));
    }

    #[test]
    fn degenerate_octahedron_apex() {
        // square pyramid: apex lies on four facets
        let p = Polyhedron::from_rows(
            &[vec![0, 0, 1], vec![1, 0, -1], vec![0, 1, -1], vec![-1, 0, -1], vec![0, -1, -1]],
            &[int(0), int(-1), int(-1), int(-1), int(-1)],
        )
        .unwrap();
        let v = p.vertex_enumerate().unwrap();
        assert_eq!(v.vertices.len(), 5);
    }

    #[test]
    fn hull_round_trip() {
        let vrep = VRep {
            vertices: vec![vec![int(0), int(0)], vec![rat(3, 2), int(0)], vec![int(0), int(2)], vec![int(1), int(1)]],
            rays: vec![],
        };
        let p = Polyhedron::from_vrep(2, &vrep).unwrap();
        let back = p.vertex_enumerate().unwrap();
        assert_eq!(back.vertices.len(), 4);
        assert!(p.contains_point(&[rat(1, 2), rat(1, 2)]));
        assert!(!p.contains_point(&[int(1), rat(3, 2)]));
    }

    #[test]
    fn hull_with_rays() {
        let vrep = VRep { vertices: vec![vec![int(1), int(0)], vec![int(0), int(1)]], rays: vec![b(&[1, 0]), b(&[0, 1])] };
        let p = Polyhedron::from_vrep(2, &vrep).unwrap();
        let expect = Polyhedron::from_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]], &[int(0), int(0), int(1)]).unwrap();
        assert!(p.same_point_set(&expect));
        assert_eq!(p.halfspaces().len(), 3);
    }

    #[test]
    fn flat_hull_is_rejected() {
        let vrep = VRep { vertices: vec![vec![int(0), int(0)], vec![int(1), int(1)]], rays: vec![] };
        assert_eq!(Polyhedron::from_vrep(2, &vrep), Err(GeometryError::NotFullDimensional));
    }
}
