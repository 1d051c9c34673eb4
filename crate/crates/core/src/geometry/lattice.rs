//! Lattice-point enumeration over bounding boxes.
//!
//! The outermost coordinate is split across a rayon pool whose size is read
//! from `LOCVOL_THREADS` (default: rayon's choice).

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{DifferencePlan, GeometryError, Polyhedron, Result};
use crate::lp::{LpOutcome, Sense};
use crate::scalar;
use crate::Rational;

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("LOCVOL_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
            b = b.num_threads(n.max(1));
        }
        b.build().expect("thread pool")
    })
}

/// Integer form of a halfspace: `⟨q·a, u⟩ ≥ p`.
struct IntRow {
    normal: Vec<i128>,
    rhs: i128,
}

impl IntRow {
    fn holds(&self, u: &[i64]) -> bool {
        let s: i128 = self.normal.iter().zip(u).map(|(a, &x)| a * x as i128).sum();
        s >= self.rhs
    }
}

fn int_rows(p: &Polyhedron) -> Result<Vec<IntRow>> {
    p.halfspaces()
        .iter()
        .map(|h| {
            let q = h.offset().denom();
            let normal = h
                .normal()
                .iter()
                .map(|a| (a * q).to_i128().ok_or(GeometryError::Overflow))
                .collect::<Result<Vec<_>>>()?;
            let rhs = h.offset().numer().to_i128().ok_or(GeometryError::Overflow)?;
            Ok(IntRow { normal, rhs })
        })
        .collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| scalar::int(i64::from(j == i))).collect()
}

/// Integer bounds of a bounded polyhedron along each axis; `None` when empty.
fn axis_box(p: &Polyhedron) -> Result<Option<Vec<(i64, i64)>>> {
    let n = p.dim();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let e = unit(n, i);
        let lo = match p.lp_optimize(&e, Sense::Minimize) {
            LpOutcome::Optimal { value, .. } => scalar::ceil(&value),
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(GeometryError::Unbounded),
        };
        let hi = match p.lp_optimize(&e, Sense::Maximize) {
            LpOutcome::Optimal { value, .. } => scalar::floor(&value),
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(GeometryError::Unbounded),
        };
        if lo > hi {
            return Ok(None);
        }
        let to = |b: BigInt| b.to_i64().ok_or(GeometryError::Overflow);
        out.push((to(lo)?, to(hi)?));
    }
    Ok(Some(out))
}

fn merge_boxes(a: Option<Vec<(i64, i64)>>, b: Option<Vec<(i64, i64)>>) -> Option<Vec<(i64, i64)>> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(a.iter().zip(&b).map(|(x, y)| (x.0.min(y.0), x.1.max(y.1))).collect()),
    }
}

/// Visits every integer point of the box whose first coordinate is `first`.
fn for_each_in_slice(bx: &[(i64, i64)], first: i64, mut f: impl FnMut(&[i64])) {
    let n = bx.len();
    let mut u: Vec<i64> = bx.iter().map(|b| b.0).collect();
    u[0] = first;
    if bx[1..].iter().any(|b| b.0 > b.1) {
        return;
    }
    loop {
        f(&u);
        let mut k = n - 1;
        loop {
            if k == 0 {
                return;
            }
            if u[k] < bx[k].1 {
                u[k] += 1;
                break;
            }
            u[k] = bx[k].0;
            k -= 1;
        }
    }
}

/// All lattice points of a bounded polyhedron, in lexicographic order.
pub fn lattice_points(p: &Polyhedron) -> Result<Vec<Vec<i64>>> {
    let Some(bx) = axis_box(p)? else {
        return Ok(Vec::new());
    };
    let rows = int_rows(p)?;
    let slices: Vec<Vec<Vec<i64>>> = pool().install(|| {
        (bx[0].0..=bx[0].1)
            .into_par_iter()
            .map(|x0| {
                let mut found = Vec::new();
                for_each_in_slice(&bx, x0, |u| {
                    if rows.iter().all(|r| r.holds(u)) {
                        found.push(u.to_vec());
                    }
                });
                found
            })
            .collect()
    });
    Ok(slices.into_iter().flatten().collect())
}

/// `#((m·outer \ m·inner) ∩ ℤⁿ)` for nested polyhedra whose difference is bounded.
pub fn count_lattice_difference(inner: &Polyhedron, outer: &Polyhedron, m: &Rational) -> Result<u64> {
    let outer_m = outer.scaled(m);
    let inner_m = inner.scaled(m);
    let plan = DifferencePlan::new(&inner_m, &outer_m)?;
    let mut bx = None;
    for r in &plan.regions {
        bx = merge_boxes(bx, axis_box(r)?);
    }
    let Some(bx) = bx else {
        return Ok(0);
    };
    let out_rows = int_rows(&outer_m)?;
    let in_rows = int_rows(&inner_m)?;
    let count = pool().install(|| {
        (bx[0].0..=bx[0].1)
            .into_par_iter()
            .map(|x0| {
                let mut c = 0u64;
                for_each_in_slice(&bx, x0, |u| {
                    if out_rows.iter().all(|r| r.holds(u)) && !in_rows.iter().all(|r| r.holds(u)) {
                        c += 1;
                    }
                });
                c
            })
            .sum()
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn staircase_counts() {
        let outer = Polyhedron::orthant(2);
        let inner = Polyhedron::from_rows(&[vec![1, 0], vec![0, 1], vec![3, 2]], &[int(0), int(0), int(6)]).unwrap();
        // points with 3x + 2y < 6: (0,0),(0,1),(0,2),(1,0),(1,1)
        assert_eq!(count_lattice_difference(&inner, &outer, &int(1)).unwrap(), 5);
        // m = 2: 3x + 2y < 12
        assert_eq!(count_lattice_difference(&inner, &outer, &int(2)).unwrap(), 16);
    }

    #[test]
    fn rational_scaling_is_exact() {
        let outer = Polyhedron::orthant(1);
        let inner = Polyhedron::from_rows(&[vec![1]], &[rat(3, 2)]).unwrap();
        // 0 ≤ x < 3/2·m
        assert_eq!(count_lattice_difference(&inner, &outer, &int(1)).unwrap(), 2);
        assert_eq!(count_lattice_difference(&inner, &outer, &int(2)).unwrap(), 3);
    }

    #[test]
    fn points_of_a_triangle() {
        let t = Polyhedron::from_rows(&[vec![1, 0], vec![0, 1], vec![-1, -1]], &[int(0), int(0), int(-2)]).unwrap();
        let pts = lattice_points(&t).unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![0, 0]);
    }
}
