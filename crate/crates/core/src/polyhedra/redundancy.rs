use super::fme::tidy;
use super::lp::{feasible_point, maximize, LpOutcome};
use super::system::{Inequality, LinSystem};
use crate::error::{Error, Result};

/// Removes every row implied by the remaining ones, one LP per row.
///
/// Nonnegativity rows take part like any other row; a variable whose `>= 0`
/// row turns out redundant loses its flag.
pub fn remove_redundant(sys: &LinSystem) -> Result<LinSystem> {
    let n = sys.dim();
    let base = tidy(sys.ineqs().to_vec());
    let mut rows: Vec<(Inequality, Option<usize>)> = base.into_iter().map(|r| (r, None)).collect();
    let mat = sys.materialize();
    let mut j = 0;
    for r in mat.into_iter().skip(sys.ineqs().len()) {
        while !sys.is_nonneg(j) {
            j += 1;
        }
        rows.push((r, Some(j)));
        j += 1;
    }

    let all: Vec<Inequality> = rows.iter().map(|(r, _)| r.clone()).collect();
    if feasible_point(n, &all).is_none() {
        return Err(Error::Infeasible);
    }

    let mut alive = vec![true; rows.len()];
    for i in 0..rows.len() {
        let others: Vec<Inequality> = rows
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i && alive[*k])
            .map(|(_, (r, _))| r.clone())
            .collect();
        let (c, b) = rows[i].0.le_view();
        let implied = match maximize(&c, &others) {
            LpOutcome::Optimal { value, .. } => value <= b,
            LpOutcome::Unbounded => false,
            // cannot happen for a feasible superset, keep the row to be safe
            LpOutcome::Infeasible => false,
        };
        if implied {
            alive[i] = false;
        }
    }

    let mut kept = Vec::new();
    let mut nonneg = vec![false; n];
    for ((r, flag), live) in rows.into_iter().zip(alive) {
        if !live {
            continue;
        }
        match flag {
            Some(j) => nonneg[j] = true,
            None => kept.push(r),
        }
    }
    Ok(sys.with_rows(kept, nonneg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::{rat, Sense};

    #[test]
    fn parallel_bounds() {
        let mut s = LinSystem::new(&["x"]).unwrap();
        s.add_int(&[("x", 1)], Sense::Le, 1).unwrap();
        s.add_int(&[("x", 1)], Sense::Le, 2).unwrap();
        let r = remove_redundant(&s).unwrap();
        assert_eq!(r.ineqs().len(), 1);
        assert_eq!(r.ineqs()[0].rhs, rat(1));
    }

    #[test]
    fn implied_sum() {
        let mut s = LinSystem::new(&["x", "y"]).unwrap();
        s.add_int(&[("x", 1)], Sense::Le, 1).unwrap();
        s.add_int(&[("y", 1)], Sense::Le, 1).unwrap();
        s.add_int(&[("x", 1), ("y", 1)], Sense::Le, 3).unwrap();
        let r = remove_redundant(&s).unwrap();
        assert_eq!(r.ineqs().len(), 2);
        assert!(r.ineqs().iter().all(|q| q.rhs == rat(1)));
    }

    #[test]
    fn infeasible_is_error() {
        let mut s = LinSystem::new(&["x"]).unwrap();
        s.add_int(&[("x", 1)], Sense::Le, -1).unwrap();
        s.add_int(&[("x", 1)], Sense::Ge, 0).unwrap();
        assert!(matches!(remove_redundant(&s), Err(Error::Infeasible)));
    }

    #[test]
    fn redundant_nonneg_flag_dropped() {
        // x >= 1 makes x >= 0 redundant
        let mut s = LinSystem::new(&["x"]).unwrap().all_nonneg();
        s.add_int(&[("x", 1)], Sense::Ge, 1).unwrap();
        s.add_int(&[("x", 1)], Sense::Le, 2).unwrap();
        let r = remove_redundant(&s).unwrap();
        assert!(!r.is_nonneg(0));
        assert_eq!(r.ineqs().len(), 2);
    }
}
