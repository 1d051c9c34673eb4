//! Exact two-phase tableau simplex with Bland's rule.
//!
//! Problems are stated in inequality form: optimise `c·x` subject to
//! `a_i·x ≥ b_i`, with `x` free. Free variables are split as `x⁺ − x⁻`.

use crate::scalar::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<F> {
    Optimal { value: F, witness: Vec<F> },
    Unbounded,
    Infeasible,
}

impl<F> LpOutcome<F> {
    pub fn value(&self) -> Option<&F> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// A constraint `coeffs·x ≥ rhs`.
pub type Constraint<F> = (Vec<F>, F);

pub fn optimize<F: Field>(
    objective: &[F],
    constraints: &[Constraint<F>],
    sense: Sense,
) -> LpOutcome<F> {
    let n = objective.len();
    debug_assert!(constraints.iter().all(|(a, _)| a.len() == n));
    let m = constraints.len();

    // columns: x⁺ [0,n), x⁻ [n,2n), surplus [2n,2n+m), artificials after
    let surplus0 = 2 * n;
    let art0 = surplus0 + m;
    let needs_art: Vec<bool> = constraints.iter().map(|(_, b)| b.is_pos()).collect();
    let n_art = needs_art.iter().filter(|&&x| x).count();
    let ncols = art0 + n_art;

    let mut tab: Vec<Vec<F>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = art0;
    for (i, (a, b)) in constraints.iter().enumerate() {
        let mut row = vec![F::zero(); ncols + 1];
        if needs_art[i] {
            // a·x⁺ − a·x⁻ − s + art = b
            for j in 0..n {
                row[j] = a[j].clone();
                row[n + j] = -a[j].clone();
            }
            row[surplus0 + i] = -F::one();
            row[next_art] = F::one();
            row[ncols] = b.clone();
            basis.push(next_art);
            next_art += 1;
        } else {
            // −a·x⁺ + a·x⁻ + s = −b ≥ 0
            for j in 0..n {
                row[j] = -a[j].clone();
                row[n + j] = a[j].clone();
            }
            row[surplus0 + i] = F::one();
            row[ncols] = -b.clone();
            basis.push(surplus0 + i);
        }
        tab.push(row);
    }

    if n_art > 0 {
        let mut cost = vec![F::zero(); ncols];
        for c in cost.iter_mut().skip(art0) {
            *c = F::one();
        }
        let allowed = vec![true; ncols];
        run_simplex(&mut tab, &mut basis, &cost, &allowed);
        let infeas = basis
            .iter()
            .zip(&tab)
            .filter(|(&b, _)| b >= art0)
            .any(|(_, row)| !row[ncols].is_zero());
        if infeas {
            return LpOutcome::Infeasible;
        }
        // pivot zero-level artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < tab.len() {
            if basis[i] >= art0 {
                if let Some(j) = (0..art0).find(|&j| !tab[i][j].is_zero()) {
                    pivot(&mut tab, None, i, j);
                    basis[i] = j;
                } else {
                    tab.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![F::zero(); ncols];
    for j in 0..n {
        let c = match sense {
            Sense::Minimize => objective[j].clone(),
            Sense::Maximize => -objective[j].clone(),
        };
        cost[n + j] = -c.clone();
        cost[j] = c;
    }
    let allowed: Vec<bool> = (0..ncols).map(|j| j < art0).collect();
    if !run_simplex(&mut tab, &mut basis, &cost, &allowed) {
        return LpOutcome::Unbounded;
    }

    let mut xs = vec![F::zero(); 2 * n];
    for (row, &b) in tab.iter().zip(&basis) {
        if b < 2 * n {
            xs[b] = row[ncols].clone();
        }
    }
    let witness: Vec<F> = (0..n).map(|j| xs[j].clone() - xs[n + j].clone()).collect();
    let value = objective
        .iter()
        .zip(&witness)
        .fold(F::zero(), |acc, (c, x)| acc + c.clone() * x.clone());
    LpOutcome::Optimal { value, witness }
}

/// Minimises `cost` from the current basic feasible tableau. Returns `false`
/// when the objective is unbounded below.
fn run_simplex<F: Field>(
    tab: &mut [Vec<F>],
    basis: &mut [usize],
    cost: &[F],
    allowed: &[bool],
) -> bool {
    let ncols = cost.len();
    let mut z: Vec<F> = cost.to_vec();
    z.push(F::zero());
    for (row, &b) in tab.iter().zip(basis.iter()) {
        if cost[b].is_zero() {
            continue;
        }
        let cb = cost[b].clone();
        for j in 0..=ncols {
            let v = cb.clone() * row[j].clone();
            z[j] = z[j].clone() - v;
        }
    }
    loop {
        let Some(e) = (0..ncols).find(|&j| allowed[j] && z[j].is_neg()) else {
            return true;
        };
        let mut leave: Option<(usize, F)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[e].is_pos() {
                continue;
            }
            let ratio = row[ncols].clone() / row[e].clone();
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((l, _)) = leave else {
            return false;
        };
        pivot(tab, Some(&mut z), l, e);
        basis[l] = e;
    }
}

fn pivot<F: Field>(tab: &mut [Vec<F>], z: Option<&mut Vec<F>>, r: usize, c: usize) {
    let width = tab[r].len();
    let p = tab[r][c].clone();
    if p != F::one() {
        for j in 0..width {
            tab[r][j] = tab[r][j].clone() / p.clone();
        }
    }
    let prow = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for j in 0..width {
            if prow[j].is_zero() {
                continue;
            }
            let v = prow[j].clone() * f.clone();
            row[j] = row[j].clone() - v;
        }
    }
    if let Some(z) = z {
        if !z[c].is_zero() {
            let f = z[c].clone();
            for j in 0..width {
                if prow[j].is_zero() {
                    continue;
                }
                let v = prow[j].clone() * f.clone();
                z[j] = z[j].clone() - v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::Rational;

    fn c(a: &[i64], b: Rational) -> Constraint<Rational> {
        (a.iter().map(|&v| int(v)).collect(), b)
    }

    fn unit_square() -> Vec<Constraint<Rational>> {
        vec![c(&[1, 0], int(0)), c(&[0, 1], int(0)), c(&[-1, 0], int(-1)), c(&[0, -1], int(-1))]
    }

    #[test]
    fn max_x_over_unit_square() {
        match optimize(&[int(1), int(0)], &unit_square(), Sense::Maximize) {
            LpOutcome::Optimal { value, witness } => {
                assert_eq!(value, int(1));
                assert_eq!(witness[0], int(1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unbounded_and_infeasible() {
        let quadrant = vec![c(&[1, 0], int(0)), c(&[0, 1], int(0))];
        assert_eq!(optimize(&[int(1), int(1)], &quadrant, Sense::Maximize), LpOutcome::Unbounded);
        let empty = vec![c(&[1], int(1)), c(&[-1], int(0))];
        assert_eq!(optimize(&[int(1)], &empty, Sense::Minimize), LpOutcome::Infeasible);
    }

    #[test]
    fn free_variables_reach_negative_optimum() {
        // min x subject to x >= -7/2
        let cons = vec![c(&[1], rat(-7, 2))];
        assert_eq!(
            optimize(&[int(1)], &cons, Sense::Minimize).value().cloned(),
            Some(rat(-7, 2))
        );
    }

    #[test]
    fn degenerate_problem_terminates() {
        // many constraints through the optimal vertex
        let cons = vec![
            c(&[1, 0, 0], int(0)),
            c(&[0, 1, 0], int(0)),
            c(&[0, 0, 1], int(0)),
            c(&[-1, -1, -1], int(0)),
            c(&[-1, -2, -1], int(0)),
            c(&[-2, -1, -1], int(0)),
        ];
        assert_eq!(
            optimize(&[int(1), int(1), int(1)], &cons, Sense::Maximize).value().cloned(),
            Some(int(0))
        );
    }
}
