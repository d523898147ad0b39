//! Exact two-phase simplex over free variables, Bland's rule throughout.

use num::{Signed, Zero};

use super::system::{Inequality, LinSystem, Rat};
use crate::error::{validation, Result};

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Unbounded,
    Infeasible,
}

struct Tableau {
    t: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.t[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, j: usize, cost: &mut [Rat]) {
        let p = self.t[r][j].clone();
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v / &p;
            }
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r {
                eliminate(row, &prow, j);
            }
        }
        eliminate(cost, &prow, j);
        self.basis[r] = j;
    }

    /// Maximizes `cost` using columns `< allowed`. Returns false when unbounded.
    fn optimize(&mut self, cost: &mut [Rat], allowed: usize) -> bool {
        for i in 0..self.t.len() {
            let b = self.basis[i];
            if !cost[b].is_zero() {
                let row = self.t[i].clone();
                eliminate(cost, &row, b);
            }
        }
        loop {
            let Some(j) = (0..allowed).find(|&j| cost[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][j];
                if !a.is_positive() {
                    continue;
                }
                let q = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, bq)) => q < *bq || (q == *bq && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, q));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j, cost),
                None => return false,
            }
        }
    }
}

fn eliminate(row: &mut [Rat], prow: &[Rat], j: usize) {
    let f = row[j].clone();
    if f.is_zero() {
        return;
    }
    for (v, p) in row.iter_mut().zip(prow) {
        if !p.is_zero() {
            *v -= &f * p;
        }
    }
}

/// Maximizes `objective . x` subject to `rows`, with `x` unrestricted in sign.
pub fn maximize(objective: &[Rat], rows: &[Inequality]) -> LpOutcome {
    let n = objective.len();
    let le: Vec<(Vec<Rat>, Rat)> = rows.iter().map(|r| r.le_view()).collect();
    let m = le.len();
    let n_art = le.iter().filter(|(_, b)| b.is_negative()).count();
    let art_start = 2 * n + m;
    let ncols = art_start + n_art;

    let mut t = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut k = 0;
    for (i, (a, b)) in le.iter().enumerate() {
        let mut row = vec![Rat::zero(); ncols + 1];
        let flip = b.is_negative();
        for (j, c) in a.iter().enumerate() {
            let c = if flip { -c } else { c.clone() };
            row[n + j] = -&c;
            row[j] = c;
        }
        if flip {
            row[2 * n + i] = Rat::from_integer((-1).into());
            row[art_start + k] = Rat::from_integer(1.into());
            row[ncols] = -b;
            basis.push(art_start + k);
            k += 1;
        } else {
            row[2 * n + i] = Rat::from_integer(1.into());
            row[ncols] = b.clone();
            basis.push(2 * n + i);
        }
        t.push(row);
    }
    let mut tab = Tableau { t, basis, ncols };

    if n_art > 0 {
        let mut cost = vec![Rat::zero(); ncols + 1];
        for c in &mut cost[art_start..ncols] {
            *c = Rat::from_integer((-1).into());
        }
        tab.optimize(&mut cost, ncols);
        if !cost[ncols].is_zero() {
            return LpOutcome::Infeasible;
        }
        // drive zero-level artificials out of the basis
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= art_start {
                match (0..art_start).find(|&j| !tab.t[i][j].is_zero()) {
                    Some(j) => {
                        let mut dummy = vec![Rat::zero(); ncols + 1];
                        tab.pivot(i, j, &mut dummy);
                        i += 1;
                    }
                    None => {
                        tab.t.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        for row in &mut tab.t {
            row.drain(art_start..ncols);
        }
        tab.ncols = art_start;
    }

    let nc = tab.ncols;
    let mut cost = vec![Rat::zero(); nc + 1];
    for (j, c) in objective.iter().enumerate() {
        cost[j] = c.clone();
        cost[n + j] = -c;
    }
    if !tab.optimize(&mut cost, nc) {
        return LpOutcome::Unbounded;
    }
    let mut vals = vec![Rat::zero(); nc];
    for (i, &b) in tab.basis.iter().enumerate() {
        vals[b] = tab.t[i][nc].clone();
    }
    let point: Vec<Rat> = (0..n).map(|j| &vals[j] - &vals[n + j]).collect();
    LpOutcome::Optimal { value: -&cost[nc], point }
}

/// Some point of the row set, if any.
pub(crate) fn feasible_point(n: usize, rows: &[Inequality]) -> Option<Vec<Rat>> {
    match maximize(&vec![Rat::zero(); n], rows) {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}

/// True iff every point of `a` satisfies every row of `b` (same variable order).
pub fn implies(a: &LinSystem, b: &LinSystem) -> Result<bool> {
    if a.vars() != b.vars() {
        return validation("implication check needs identical variable lists");
    }
    let rows = a.materialize();
    for r in b.materialize() {
        let (c, rhs) = r.le_view();
        match maximize(&c, &rows) {
            LpOutcome::Infeasible => return Ok(true),
            LpOutcome::Unbounded => return Ok(false),
            LpOutcome::Optimal { value, .. } => {
                if value > rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::{rat, ratio, Sense};

    fn sys(rows: &[(&[i64], Sense, i64)]) -> Vec<Inequality> {
        rows.iter()
            .map(|(a, s, b)| Inequality::new(a.iter().map(|&c| rat(c)).collect(), *s, rat(*b)))
            .collect()
    }

    #[test]
    fn simple_max() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0  -> (8/5, 6/5), value 14/5
        let rows = sys(&[
            (&[1, 2], Sense::Le, 4),
            (&[3, 1], Sense::Le, 6),
            (&[1, 0], Sense::Ge, 0),
            (&[0, 1], Sense::Ge, 0),
        ]);
        match maximize(&[rat(1), rat(1)], &rows) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, ratio(14, 5));
                assert_eq!(point, vec![ratio(8, 5), ratio(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn needs_phase_one() {
        // x >= 2, x <= 5: max -x -> -2
        let rows = sys(&[(&[1], Sense::Ge, 2), (&[1], Sense::Le, 5)]);
        match maximize(&[rat(-1)], &rows) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(-2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let rows = sys(&[(&[1], Sense::Ge, 3), (&[1], Sense::Le, 1)]);
        assert!(matches!(maximize(&[rat(1)], &rows), LpOutcome::Infeasible));
        let rows = sys(&[(&[1, 0], Sense::Ge, 0)]);
        assert!(matches!(maximize(&[rat(0), rat(1)], &rows), LpOutcome::Unbounded));
    }

    #[test]
    fn degenerate_equalities() {
        // x = y via two rows, x + y <= 2
        let rows = sys(&[(&[1, -1], Sense::Le, 0), (&[1, -1], Sense::Ge, 0), (&[1, 1], Sense::Le, 2)]);
        match maximize(&[rat(1), rat(0)], &rows) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1)),
            other => panic!("{other:?}"),
        }
    }
}
