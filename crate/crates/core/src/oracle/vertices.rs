use nalgebra::{DMatrix, DVector};

use crate::error::{validation, Error, Result};
use crate::polyhedra::{LinSystem, RatePoint};

const MEMBER_TOL: f64 = 1e-9;
const DEDUP: f64 = 1e-9;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn inside(rows: &[(Vec<f64>, f64)], x: &[f64]) -> bool {
    rows.iter().all(|(a, b)| {
        let lhs: f64 = a.iter().zip(x).map(|(c, v)| c * v).sum();
        lhs <= b + MEMBER_TOL * b.abs().max(1.0)
    })
}

/// Generalized cross product: a vector orthogonal to the `d-1` given rows.
fn orthogonal(rows: &[&Vec<f64>], d: usize) -> Vec<f64> {
    if d == 1 {
        return vec![1.0];
    }
    (0..d)
        .map(|skip| {
            let m = DMatrix::from_fn(d - 1, d - 1, |r, c| rows[r][if c < skip { c } else { c + 1 }]);
            let sign = if skip % 2 == 0 { 1.0 } else { -1.0 };
            sign * m.determinant()
        })
        .collect()
}

/// Errors when the recession cone `{d : A d <= 0}` is nontrivial.
fn check_bounded(rows: &[(Vec<f64>, f64)], d: usize) -> Result<()> {
    let a = DMatrix::from_fn(rows.len(), d, |r, c| rows[r].0[c]);
    if rows.len() < d || a.rank(1e-9) < d {
        return Err(Error::Unbounded {
            direction: "lineality".into(),
        });
    }
    for sub in subsets(rows.len(), d - 1) {
        let picked: Vec<&Vec<f64>> = sub.iter().map(|&i| &rows[i].0).collect();
        let n = orthogonal(&picked, d);
        let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        for s in [1.0, -1.0] {
            let dir: Vec<f64> = n.iter().map(|x| s * x / norm).collect();
            let ok = rows
                .iter()
                .all(|(r, _)| r.iter().zip(&dir).map(|(c, v)| c * v).sum::<f64>() <= 1e-9);
            if ok {
                let pretty: Vec<String> = dir.iter().map(|x| format!("{:.3}", x + 0.0)).collect();
                return Err(Error::Unbounded {
                    direction: format!("({})", pretty.join(",")),
                });
            }
        }
    }
    Ok(())
}

/// Vertex enumeration in floating point: solve every `d`-subset of rows by LU,
/// keep solutions satisfying all rows, merge near-duplicates.
pub fn brute_vertices(sys: &LinSystem) -> Result<Vec<RatePoint>> {
    let d = sys.dim();
    if d == 0 || d > 4 {
        return validation(format!("brute_vertices supports 1 to 4 variables, got {d}"));
    }
    let rows = sys.float_view().le_rows();
    let mut out: Vec<RatePoint> = Vec::new();
    for sub in subsets(rows.len(), d) {
        let a = DMatrix::from_fn(d, d, |r, c| rows[sub[r]].0[c]);
        let b = DVector::from_fn(d, |r, _| rows[sub[r]].1);
        let Some(x) = a.lu().solve(&b) else {
            continue;
        };
        let x: Vec<f64> = x.iter().copied().collect();
        if x.iter().any(|v| !v.is_finite()) || !inside(&rows, &x) {
            continue;
        }
        if !out.iter().any(|p| p.iter().zip(&x).all(|(u, v)| (u - v).abs() <= DEDUP)) {
            out.push(x);
        }
    }
    if out.is_empty() {
        // empty polyhedron, or one without vertices
        if rows.iter().any(|(a, b)| a.iter().all(|c| *c == 0.0) && *b < 0.0) {
            return Ok(out);
        }
    }
    check_bounded(&rows, d)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::Sense;

    #[test]
    fn simplex_and_square() {
        let mut s = LinSystem::new(&["x", "y"]).unwrap().all_nonneg();
        s.add_int(&[("x", 1), ("y", 1)], Sense::Le, 1).unwrap();
        assert_eq!(brute_vertices(&s).unwrap().len(), 3);
        let mut q = LinSystem::new(&["x", "y"]).unwrap().all_nonneg();
        q.add_int(&[("x", 1)], Sense::Le, 1).unwrap();
        q.add_int(&[("y", 1)], Sense::Le, 1).unwrap();
        assert_eq!(brute_vertices(&q).unwrap().len(), 4);
    }

    #[test]
    fn open_direction_reported() {
        let mut s = LinSystem::new(&["x", "y"]).unwrap().all_nonneg();
        s.add_int(&[("x", 1)], Sense::Le, 1).unwrap();
        match brute_vertices(&s) {
            Err(Error::Unbounded { direction }) => assert_eq!(direction, "(0.000,1.000)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strip_has_lineality() {
        let mut s = LinSystem::new(&["x", "y"]).unwrap();
        s.add_int(&[("x", 1)], Sense::Le, 1).unwrap();
        s.add_int(&[("x", 1)], Sense::Ge, 0).unwrap();
        assert!(matches!(brute_vertices(&s), Err(Error::Unbounded { .. })));
    }
}
