//! Dense exact linear algebra over an ordered field.

use crate::scalar::{dot, Field};

pub type Matrix<F> = Vec<Vec<F>>;

/// Row-reduces a copy of `rows` and returns the rank.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m: Matrix<F> = rows.to_vec();
    row_echelon(&mut m)
}

/// In-place Gaussian elimination; returns the rank.
fn row_echelon<F: Field>(m: &mut Matrix<F>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..nrows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / pivot.clone();
            for j in c..ncols {
                let v = m[r][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - v;
            }
        }
        r += 1;
    }
    r
}

pub fn determinant<F: Field>(a: &[Vec<F>]) -> F {
    let n = a.len();
    let mut m: Matrix<F> = a.to_vec();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det = det * pivot.clone();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / pivot.clone();
            for j in c..n {
                let v = m[c][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - v;
            }
        }
    }
    det
}

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    let mut m: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(p, c);
        let pivot = m[c][c].clone();
        for j in c..=n {
            m[c][j] = m[c][j].clone() / pivot.clone();
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..=n {
                let v = m[c][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - v;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

pub fn inverse<F: Field>(a: &[Vec<F>]) -> Option<Matrix<F>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let e: Vec<F> = (0..n).map(|i| if i == k { F::one() } else { F::zero() }).collect();
        cols.push(solve(a, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

pub fn mat_vec<F: Field>(a: &[Vec<F>], x: &[F]) -> Vec<F> {
    a.iter().map(|row| dot(row, x)).collect()
}

/// `xᵀ A y`.
pub fn bilinear<F: Field>(a: &[Vec<F>], x: &[F], y: &[F]) -> F {
    dot(x, &mat_vec(a, y))
}

/// Pivots of the unpivoted LDLᵀ factorisation of a symmetric matrix, or `None`
/// when a zero pivot is met (the matrix is then not definite).
pub fn ldl_pivots<F: Field>(a: &[Vec<F>]) -> Option<Vec<F>> {
    let n = a.len();
    let mut m: Matrix<F> = a.to_vec();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let p = m[k][k].clone();
        if p.is_zero() {
            return None;
        }
        for i in (k + 1)..n {
            let f = m[i][k].clone() / p.clone();
            for j in (k + 1)..n {
                let v = m[k][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - v;
            }
        }
        pivots.push(p);
    }
    Some(pivots)
}

pub fn is_negative_definite<F: Field>(a: &[Vec<F>]) -> bool {
    ldl_pivots(a).is_some_and(|p| p.iter().all(Field::is_neg))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Sylvester inertia by symmetric congruence elimination, with symmetric
/// pivoting when a diagonal entry vanishes.
pub fn inertia<F: Field>(a: &[Vec<F>]) -> Inertia {
    let n = a.len();
    let mut m: Matrix<F> = a.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    while let Some(&k) = active.first() {
        let rest: Vec<usize> = active[1..].to_vec();
        if m[k][k].is_zero() {
            if let Some(&j) = rest.iter().find(|&&j| !m[j][j].is_zero()) {
                swap_sym(&mut m, k, j);
            } else if let Some(&j) = rest.iter().find(|&&j| !m[k][j].is_zero()) {
                // row/col k += row/col j makes the (k,k) entry 2·m[k][j]
                add_sym(&mut m, k, j);
            } else {
                out.zero += 1;
                active.remove(0);
                continue;
            }
        }
        let p = m[k][k].clone();
        if p.is_pos() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        for &i in &rest {
            let f = m[i][k].clone() / p.clone();
            for &j in &rest {
                let v = m[k][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - v;
            }
            m[i][k] = F::zero();
            m[k][i] = F::zero();
        }
        active.remove(0);
    }
    out
}

fn swap_sym<F: Field>(m: &mut Matrix<F>, i: usize, j: usize) {
    m.swap(i, j);
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

fn add_sym<F: Field>(m: &mut Matrix<F>, k: usize, j: usize) {
    let n = m.len();
    for c in 0..n {
        let v = m[j][c].clone();
        m[k][c] = m[k][c].clone() + v;
    }
    for r in 0..n {
        let v = m[r][j].clone();
        m[r][k] = m[r][k].clone() + v;
    }
}
