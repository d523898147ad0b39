use num::Zero;

use super::lp::{maximize, LpOutcome};
use super::system::{to_f64, Inequality, LinSystem, Rat, RatePoint};
use super::DEDUP_TOL;
use crate::error::{validation, Error, Result};

/// Extreme points of a bounded system (dimension at most 4).
///
/// Every `d`-subset of rows is solved exactly; unique solutions satisfying the
/// whole system are kept, then deduplicated at [`DEDUP_TOL`].
pub fn enumerate_vertices(sys: &LinSystem) -> Result<Vec<RatePoint>> {
    let d = sys.dim();
    if d > 4 {
        return validation(format!("vertex enumeration supports at most 4 variables, got {d}"));
    }
    let rows = sys.materialize();
    for j in 0..d {
        for (sign, tag) in [(1, "+"), (-1, "-")] {
            let mut c = vec![Rat::zero(); d];
            c[j] = Rat::from_integer(sign.into());
            match maximize(&c, &rows) {
                LpOutcome::Infeasible => return Ok(Vec::new()),
                LpOutcome::Unbounded => {
                    return Err(Error::Unbounded { direction: format!("{tag}{}", sys.vars()[j]) })
                }
                LpOutcome::Optimal { .. } => {}
            }
        }
    }
    if d == 0 {
        return Ok(vec![Vec::new()]);
    }

    let mut out: Vec<RatePoint> = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let pick: Vec<&Inequality> = idx.iter().map(|&i| &rows[i]).collect();
        if let Some(x) = solve_exact(&pick) {
            if rows.iter().all(|r| r.holds_exact(&x)) {
                let p: RatePoint = x.iter().map(to_f64).collect();
                if !out.iter().any(|q| close(q, &p)) {
                    out.push(p);
                }
            }
        }
        if !next_combination(&mut idx, rows.len()) {
            break;
        }
    }
    Ok(out)
}

pub(crate) fn close(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= DEDUP_TOL)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    if k > n {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for t in i + 1..k {
                idx[t] = idx[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Unique solution of the rows taken as equalities, if the square system is regular.
fn solve_exact(rows: &[&Inequality]) -> Option<Vec<Rat>> {
    let d = rows.len();
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| {
            let mut v = r.coeffs.clone();
            v.push(r.rhs.clone());
            v
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &p;
        }
        let prow = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, q) in row.iter_mut().zip(&prow) {
                *v -= &f * q;
            }
        }
    }
    Some(m.into_iter().map(|r| r[d].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::Sense;

    #[test]
    fn unit_cube() {
        let mut s = LinSystem::new(&["x", "y", "z"]).unwrap().all_nonneg();
        for v in ["x", "y", "z"] {
            s.add_int(&[(v, 1)], Sense::Le, 1).unwrap();
        }
        assert_eq!(enumerate_vertices(&s).unwrap().len(), 8);
    }

    #[test]
    fn simplex() {
        let mut s = LinSystem::new(&["x", "y", "z"]).unwrap().all_nonneg();
        s.add_int(&[("x", 1), ("y", 1), ("z", 1)], Sense::Le, 1).unwrap();
        assert_eq!(enumerate_vertices(&s).unwrap().len(), 4);
    }

    #[test]
    fn unbounded_direction_named() {
        let mut s = LinSystem::new(&["R1", "R3"]).unwrap().all_nonneg();
        s.add_int(&[("R1", 1)], Sense::Le, 1).unwrap();
        match enumerate_vertices(&s) {
            Err(Error::Unbounded { direction }) => assert_eq!(direction, "+R3"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_apex() {
        // square pyramid apex lies on four facets
        let mut s = LinSystem::new(&["x", "y", "z"]).unwrap();
        s.set_nonneg("z").unwrap();
        s.add_int(&[("x", 1), ("z", 1)], Sense::Le, 1).unwrap();
        s.add_int(&[("x", -1), ("z", 1)], Sense::Le, 1).unwrap();
        s.add_int(&[("y", 1), ("z", 1)], Sense::Le, 1).unwrap();
        s.add_int(&[("y", -1), ("z", 1)], Sense::Le, 1).unwrap();
        assert_eq!(enumerate_vertices(&s).unwrap().len(), 5);
    }
}
