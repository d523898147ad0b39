use std::cmp::Ordering;

use super::lp::{maximize, LpOutcome};
use super::system::{rat, rat_f64, to_f64, Inequality, RatePoint, Sense};
use super::vertices::close;
use super::DEDUP_TOL;
use crate::error::{validation, Result};

/// `a >= b - tol` in every coordinate.
pub fn dominates(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| *x >= y - tol)
}

/// A point of the convex hull of `pts` that dominates `p` within `tol`, if any.
pub fn hull_dominates(pts: &[RatePoint], p: &[f64], tol: f64) -> Result<Option<RatePoint>> {
    if pts.iter().any(|q| q.len() != p.len()) {
        return validation("hull_dominates: points of mixed dimension");
    }
    if let Some(q) = pts.iter().find(|q| dominates(q, p, tol)) {
        return Ok(Some(q.clone()));
    }
    if pts.len() < 2 {
        return Ok(None);
    }
    let k = pts.len();
    let mut rows = Vec::new();
    for i in 0..k {
        let mut c = vec![rat(0); k];
        c[i] = rat(1);
        rows.push(Inequality::new(c, Sense::Ge, rat(0)));
    }
    rows.push(Inequality::new(vec![rat(1); k], Sense::Le, rat(1)));
    rows.push(Inequality::new(vec![rat(1); k], Sense::Ge, rat(1)));
    for j in 0..p.len() {
        let c = pts.iter().map(|q| rat_f64(q[j])).collect::<Result<Vec<_>>>()?;
        rows.push(Inequality::new(c, Sense::Ge, rat_f64(p[j])? - rat_f64(tol)?));
    }
    match maximize(&vec![rat(0); k], &rows) {
        LpOutcome::Optimal { point, .. } => {
            let w: Vec<f64> = point.iter().map(to_f64).collect();
            let comb = (0..p.len())
                .map(|j| w.iter().zip(pts).map(|(a, q)| a * q[j]).sum())
                .collect();
            Ok(Some(comb))
        }
        _ => Ok(None),
    }
}

/// Points not dominated by another point of the set. Equal points (within
/// [`DEDUP_TOL`]) are kept once, first occurrence wins.
pub fn pareto_filter(pts: &[RatePoint]) -> Result<Vec<RatePoint>> {
    let Some(first) = pts.first() else {
        return Ok(Vec::new());
    };
    if pts.iter().any(|p| p.len() != first.len()) {
        return validation("pareto_filter: points of mixed dimension");
    }
    let mut uniq: Vec<RatePoint> = Vec::new();
    for p in pts {
        if !uniq.iter().any(|q| close(q, p)) {
            uniq.push(p.clone());
        }
    }
    let out = uniq
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            !uniq
                .iter()
                .enumerate()
                .any(|(k, q)| k != *i && dominates(q, p, DEDUP_TOL))
        })
        .map(|(_, p)| p.clone())
        .collect();
    Ok(out)
}

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Upper-right Pareto frontier of the convex hull of all points, sorted by
/// first coordinate. Collinear interior points are dropped.
pub fn union_hull_2d(curves: &[Vec<RatePoint>]) -> Result<Vec<RatePoint>> {
    let mut pts: Vec<RatePoint> = curves.iter().flatten().cloned().collect();
    if pts.is_empty() {
        return validation("union_hull_2d: no points");
    }
    if pts.iter().any(|p| p.len() != 2 || !p[0].is_finite() || !p[1].is_finite()) {
        return validation("union_hull_2d: points must be finite and two-dimensional");
    }
    pts.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .unwrap_or(Ordering::Equal)
            .then(a[1].partial_cmp(&b[1]).unwrap_or(Ordering::Equal))
    });
    pts.dedup_by(|a, b| close(a, b));

    let mut hull: Vec<RatePoint> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let c = cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p);
            let scale = 1e-12 * (1.0 + p[0].abs() + p[1].abs());
            if c >= -scale {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let top = hull
        .iter()
        .map(|p| p[1])
        .fold(f64::NEG_INFINITY, f64::max);
    let start = hull
        .iter()
        .rposition(|p| p[1] >= top - DEDUP_TOL)
        .unwrap_or(0);
    Ok(hull.split_off(start))
}

/// Largest second coordinate in the downward closure of a frontier at `x`.
/// `None` to the right of the frontier.
pub fn frontier_value_at(frontier: &[RatePoint], x: f64) -> Option<f64> {
    let first = frontier.first()?;
    if x <= first[0] {
        return Some(first[1]);
    }
    for w in frontier.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if x <= b[0] {
            let t = if b[0] > a[0] { (x - a[0]) / (b[0] - a[0]) } else { 1.0 };
            return Some(a[1] + t * (b[1] - a[1]));
        }
    }
    let last = frontier.last()?;
    (x <= last[0] + DEDUP_TOL).then_some(last[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_dominance_needs_mixture() {
        let pts = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(hull_dominates(&pts, &[0.5, 0.5], 0.0).unwrap().is_some());
        assert!(hull_dominates(&pts, &[0.6, 0.6], 1e-9).unwrap().is_none());
        assert_eq!(hull_dominates(&pts, &[0.9, 0.0], 0.0).unwrap(), Some(vec![1.0, 0.0]));
    }

    #[test]
    fn filter_example() {
        let pts = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5], vec![0.4, 0.4]];
        let out = pareto_filter(&pts).unwrap();
        assert_eq!(out, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5]]);
        assert_eq!(pareto_filter(&[vec![2.0, 3.0]]).unwrap().len(), 1);
        assert!(pareto_filter(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn equal_points_kept_once() {
        let out = pareto_filter(&[vec![1.0, 1.0], vec![1.0, 1.0 + 1e-12]]).unwrap();
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn hull_of_two_boxes() {
        let a = vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.0, 1.0], vec![2.0, 1.0]];
        let b = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 2.0], vec![1.0, 2.0]];
        let h = union_hull_2d(&[a, b]).unwrap();
        assert_eq!(h, vec![vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert_eq!(frontier_value_at(&h, 0.5), Some(2.0));
        assert_eq!(frontier_value_at(&h, 1.5), Some(1.5));
        assert_eq!(frontier_value_at(&h, 2.5), None);
    }

    #[test]
    fn collinear_endpoints_only() {
        let pts = vec![vec![0.0, 1.0], vec![0.25, 0.75], vec![0.5, 0.5], vec![1.0, 0.0]];
        let h = union_hull_2d(&[pts]).unwrap();
        assert_eq!(h, vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(union_hull_2d(&[]).is_err());
    }
}
