use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{inner_rows, outer_box, slice_corners, slice_r2_at, InnerKind, OuterKind};
use super::params::{cap, unit, GbicParams, Regime, SplitParams};
use super::sum::{grid_points, regime_b_sum, sum_outer, sum_rate, SumRate};
use crate::error::{validation, Result};
use crate::polyhedra::{frontier_value_at, union_hull_2d, RatePoint};

/// Half-bit certificate threshold, with slack.
pub const HALF_BIT: f64 = 0.5 + 1e-6;
/// Interferer-rate grid used by `gap_report`.
pub const BETA_GRID: usize = 21;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceRow {
    pub alpha: f64,
    pub r1: f64,
    /// `NaN` when no inner point reaches this `R1`.
    pub r2_inner: f64,
    pub r2_outer: f64,
}

fn outer_kind(r: Regime) -> OuterKind {
    match r {
        Regime::A => OuterKind::O1,
        Regime::B => OuterKind::O2,
        Regime::C => OuterKind::O4,
    }
}

/// Best inner `R2` at the inner bound's own `R1` corner, over the gamma grid.
fn inner_r2_param(kind: InnerKind, p: &GbicParams, alpha: f64, r3: f64, gammas: &[f64]) -> (f64, f64) {
    let mut r1 = 0.0;
    let mut best = f64::NAN;
    for &gamma in gammas {
        let rows = inner_rows(kind, p, SplitParams { alpha, gamma });
        r1 = rows[0].rhs;
        if let Some(v) = slice_r2_at(&rows, r1, r3) {
            if best.is_nan() || v > best {
                best = v;
            }
        }
    }
    (r1, best)
}

/// Upper frontier of the union of S2 and S3 slices at `r3`, over square grids.
pub fn regime_b_frontier(p: &GbicParams, r3: f64, grid: usize) -> Result<Vec<RatePoint>> {
    let pts = grid_points(grid);
    let corners: Vec<Vec<RatePoint>> = pts
        .par_iter()
        .map(|&alpha| {
            let mut out = Vec::new();
            for &gamma in &pts {
                for kind in [InnerKind::S2, InnerKind::S3] {
                    out.extend(slice_corners(&inner_rows(kind, p, SplitParams { alpha, gamma }), r3));
                }
            }
            out
        })
        .collect();
    union_hull_2d(&corners)
}

/// Inner and outer `R2` along the alpha grid at `R3 = C(beta P2)`.
///
/// Regime A pairs S1 with O1 and regime C pairs S4 with O4 at equal alpha.
/// Regime B evaluates the per-slice hull of S2 and S3 at the `R1` of the O2
/// slice. The inner column is made non-increasing in `R1` by a running maximum.
pub fn boundary_slice(p: &GbicParams, beta: f64, grid: usize) -> Result<Vec<SliceRow>> {
    p.validate()?;
    unit("beta", beta)?;
    if grid < 2 {
        return validation("boundary_slice needs grid >= 2");
    }
    let r3 = cap(beta * p.P2);
    let regime = p.regime();
    let okind = outer_kind(regime);
    let alphas = grid_points(grid);
    let frontier = match regime {
        Regime::B => Some(regime_b_frontier(p, r3, grid)?),
        _ => None,
    };
    let mut rows: Vec<SliceRow> = alphas
        .par_iter()
        .map(|&alpha| {
            let [o1, o2] = outer_box(okind, p, alpha, r3).unwrap_or([f64::NAN, f64::NAN]);
            let (r1, r2_inner) = match (regime, &frontier) {
                (Regime::A, _) => inner_r2_param(InnerKind::S1, p, alpha, r3, &alphas),
                (Regime::C, _) => inner_r2_param(InnerKind::S4, p, alpha, r3, &alphas),
                (Regime::B, Some(f)) => (o1, frontier_value_at(f, o1).unwrap_or(f64::NAN)),
                (Regime::B, None) => unreachable!(),
            };
            SliceRow {
                alpha,
                r1,
                r2_inner,
                r2_outer: o2,
            }
        })
        .collect();
    let mut run = f64::NEG_INFINITY;
    for r in rows.iter_mut() {
        if r.r2_inner.is_nan() {
            continue;
        }
        run = run.max(r.r2_inner);
        r.r2_inner = run;
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapReport {
    pub regime: Regime,
    /// Largest `R2_outer - R2_inner` at matched `R1` over the alpha and beta grids.
    pub max_region_gap: f64,
    /// `(alpha, beta)` where `max_region_gap` occurs.
    pub worst: (f64, f64),
    /// Same, against O1 without its `C(aP1+bP2) - xi(b)` row (regime A only).
    pub max_region_gap_loose: Option<f64>,
    pub sum_rate: SumRate,
    pub sum_outer: f64,
    pub sum_gap: f64,
    /// Regime A with `1 <= b < 1 + aP1`: the region gap is claimed to be at most half a bit.
    pub region_certified: bool,
    /// Regime A: the sum gap is claimed to be at most half a bit.
    pub sum_certified: bool,
}

impl GapReport {
    /// A claimed half-bit bound that the numbers contradict.
    pub fn finding(&self) -> bool {
        (self.region_certified && self.max_region_gap > HALF_BIT) || (self.sum_certified && self.sum_gap > HALF_BIT)
    }
}

fn max_gap(p: &GbicParams, grid: usize, loose: bool) -> Result<(f64, (f64, f64))> {
    let mut worst = (f64::NEG_INFINITY, (0.0, 0.0));
    for beta in grid_points(BETA_GRID) {
        let rows = boundary_slice(p, beta, grid)?;
        let r3 = cap(beta * p.P2);
        for r in rows {
            let outer = if loose {
                outer_box(OuterKind::O1Loose, p, r.alpha, r3).map(|b| b[1]).unwrap_or(f64::NAN)
            } else {
                r.r2_outer
            };
            let g = outer - r.r2_inner;
            if g.is_finite() && g > worst.0 {
                worst = (g, (r.alpha, beta));
            }
        }
    }
    Ok(worst)
}

/// Region and sum-rate gaps between the regime's inner and outer bounds.
pub fn gap_report(p: &GbicParams, grid: usize) -> Result<GapReport> {
    p.validate()?;
    let regime = p.regime();
    let (max_region_gap, worst) = max_gap(p, grid, false)?;
    let max_region_gap_loose = match regime {
        Regime::A => Some(max_gap(p, grid, true)?.0),
        _ => None,
    };
    let sr = sum_rate(p, grid)?;
    let so = sum_outer(p, grid)?;
    Ok(GapReport {
        regime,
        max_region_gap,
        worst,
        max_region_gap_loose,
        sum_rate: sr,
        sum_outer: so,
        sum_gap: so - sr.value,
        region_certified: regime == Regime::A && p.b >= 1.0 && p.b < 1.0 + p.a * p.P1,
        sum_certified: regime == Regime::A,
    })
}

/// One slice of a figure, tagged with its interferer-rate fraction.
#[derive(Clone, Debug)]
pub struct FigureSlice {
    pub beta: f64,
    pub rows: Vec<SliceRow>,
}

pub fn fig3_params() -> GbicParams {
    GbicParams { P1: 6.0, P2: 3.0, a: 4.0, b: 1.0 }
}

pub const FIG3_BETAS: [f64; 3] = [0.1, 0.4, 0.9];

pub fn fig5_params() -> GbicParams {
    GbicParams { P1: 10.0, P2: 8.0, a: 0.4, b: 0.6 }
}

pub const FIG5_BETAS: [f64; 4] = [0.1, 0.3, 0.6, 1.0];

/// Boundary slices for a list of interferer rates.
pub fn figure_slices(p: &GbicParams, betas: &[f64], grid: usize) -> Result<Vec<FigureSlice>> {
    betas
        .iter()
        .map(|&beta| Ok(FigureSlice { beta, rows: boundary_slice(p, beta, grid)? }))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumSweepRow {
    pub a: f64,
    pub rs1: f64,
    pub rs2: f64,
    pub rs: f64,
    pub ro: f64,
}

/// Regime-B sum rates at `P1 = 6, P2 = 3, b = 3` over `grid` interior points of `1 < a < 10`.
pub fn fig4_sweep(grid: usize) -> Result<Vec<SumSweepRow>> {
    sum_sweep(6.0, 3.0, 3.0, grid)
}

/// Regime-B sum rates over `grid` interior points of `1 < a < 1 + b P2`.
#[allow(non_snake_case)]
pub fn sum_sweep(P1: f64, P2: f64, b: f64, grid: usize) -> Result<Vec<SumSweepRow>> {
    if grid < 2 {
        return validation("sum sweep needs grid >= 2");
    }
    let hi = 1.0 + b * P2;
    (1..=grid)
        .map(|i| {
            let a = 1.0 + (hi - 1.0) * i as f64 / (grid + 1) as f64;
            let s = regime_b_sum(&GbicParams::new(P1, P2, a, b)?, grid)?;
            Ok(SumSweepRow { a, rs1: s.rs1, rs2: s.rs2, rs: s.rs, ro: s.ro })
        })
        .collect()
}

pub const CSV_PREAMBLE: &str = "# units: bits; precision: 6 decimals";

fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{:.6}", x + 0.0)
    }
}

pub fn write_slice_csv(w: &mut impl Write, p: &GbicParams, beta: f64, rows: &[SliceRow]) -> std::io::Result<()> {
    writeln!(w, "{CSV_PREAMBLE}")?;
    writeln!(
        w,
        "# P1={} P2={} a={} b={} beta={} regime={}",
        p.P1,
        p.P2,
        p.a,
        p.b,
        beta,
        p.regime()
    )?;
    writeln!(w, "alpha,R1,R2_inner,R2_outer")?;
    for r in rows {
        writeln!(w, "{},{},{},{}", num(r.alpha), num(r.r1), num(r.r2_inner), num(r.r2_outer))?;
    }
    Ok(())
}

#[allow(non_snake_case)]
pub fn write_sweep_csv(w: &mut impl Write, P1: f64, P2: f64, b: f64, rows: &[SumSweepRow]) -> std::io::Result<()> {
    writeln!(w, "{CSV_PREAMBLE}")?;
    writeln!(w, "# P1={P1} P2={P2} b={b}")?;
    writeln!(w, "a,Rs1,Rs2,Rs,Ro")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{}", num(r.a), num(r.rs1), num(r.rs2), num(r.rs), num(r.ro))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::c_of;
    use approx::assert_abs_diff_eq;

    #[test]
    fn fig3_endpoint() {
        let rows = boundary_slice(&fig3_params(), 0.9, 201).unwrap();
        let last = rows.last().unwrap();
        let want = c_of(27.0).unwrap() - c_of(2.7).unwrap();
        assert_abs_diff_eq!(last.r2_inner, want, epsilon = 1e-12);
        assert_abs_diff_eq!(last.r2_outer, want, epsilon = 1e-12);
        assert_abs_diff_eq!(rows[0].r1, c_of(6.0).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn csv_shape() {
        let p = fig3_params();
        let rows = boundary_slice(&p, 0.4, 5).unwrap();
        let mut buf = Vec::new();
        write_slice_csv(&mut buf, &p, 0.4, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_PREAMBLE);
        assert_eq!(lines[2], "alpha,R1,R2_inner,R2_outer");
        assert_eq!(lines.len(), 8);
        assert!(lines[3].starts_with("0.000000,1.403677,"));
    }

    #[test]
    fn regime_b_slice_inside_outer() {
        let p = GbicParams::new(6.0, 3.0, 2.0, 3.0).unwrap();
        for r in boundary_slice(&p, 0.5, 41).unwrap() {
            assert!(r.r2_inner <= r.r2_outer + 1e-9, "{r:?}");
        }
    }
}
