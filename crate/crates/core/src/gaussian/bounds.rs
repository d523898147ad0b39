use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::params::{cap, unit, xi, GbicParams, Regime, SplitParams};
use crate::error::{validation, Error, Result};
use crate::polyhedra::{LinSystem, RatePoint, Sense};

/// Slack allowed on `R3 <= C(P2)` before a slice is reported empty.
pub const SLICE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InnerKind {
    S1,
    S2,
    S3,
    S4,
}

impl InnerKind {
    pub const ALL: [InnerKind; 4] = [InnerKind::S1, InnerKind::S2, InnerKind::S3, InnerKind::S4];

    pub fn name(self) -> &'static str {
        match self {
            InnerKind::S1 => "S1",
            InnerKind::S2 => "S2",
            InnerKind::S3 => "S3",
            InnerKind::S4 => "S4",
        }
    }

    /// Whether the bound is stated for this regime.
    pub fn matches_regime(self, r: Regime) -> bool {
        matches!(
            (self, r),
            (InnerKind::S1, Regime::A) | (InnerKind::S2 | InnerKind::S3, Regime::B) | (InnerKind::S4, Regime::C)
        )
    }
}

impl fmt::Display for InnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InnerKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<InnerKind> {
        InnerKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Validation(format!("unknown inner bound `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OuterKind {
    O1,
    /// O1 without the `C(aP1+bP2) - xi(b)` row; within half a bit of S1 at `gamma = 1`.
    O1Loose,
    O2,
    O4,
}

impl OuterKind {
    pub const ALL: [OuterKind; 4] = [OuterKind::O1, OuterKind::O1Loose, OuterKind::O2, OuterKind::O4];

    pub fn name(self) -> &'static str {
        match self {
            OuterKind::O1 => "O1",
            OuterKind::O1Loose => "O1-loose",
            OuterKind::O2 => "O2",
            OuterKind::O4 => "O4",
        }
    }

    pub fn matches_regime(self, r: Regime) -> bool {
        matches!(
            (self, r),
            (OuterKind::O1 | OuterKind::O1Loose, Regime::A) | (OuterKind::O2, Regime::B) | (OuterKind::O4, Regime::C)
        )
    }
}

impl fmt::Display for OuterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OuterKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<OuterKind> {
        OuterKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Validation(format!("unknown outer bound `{s}`")))
    }
}

/// One row `c . (R1,R2,R3) <= rhs` with 0/1 coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussRow {
    pub coeffs: [f64; 3],
    pub rhs: f64,
}

fn row(r1: u8, r2: u8, r3: u8, rhs: f64) -> GaussRow {
    GaussRow {
        coeffs: [r1 as f64, r2 as f64, r3 as f64],
        rhs,
    }
}

/// Inequality list of an inner bound at a split, in its stated order.
pub fn inner_rows(kind: InnerKind, p: &GbicParams, s: SplitParams) -> Vec<GaussRow> {
    let (p1, p2, a, b) = (p.P1, p.P2, p.a, p.b);
    let (al, ab) = (s.alpha, 1.0 - s.alpha);
    let (g, gb) = (s.gamma, 1.0 - s.gamma);
    match kind {
        InnerKind::S1 => {
            let den = 1.0 + b * gb * p2;
            vec![
                row(1, 0, 0, cap(ab * p1 / (1.0 + al * p1))),
                row(0, 1, 0, cap(a * al * p1 / den)),
                row(0, 0, 1, cap(p2)),
                row(0, 1, 1, cap((a * al * p1 + b * g * p2) / den) + cap(gb * p2)),
            ]
        }
        InnerKind::S2 => {
            let den = 1.0 + b * gb * p2;
            let r1 = cap(ab * p1 / (1.0 + al * p1));
            vec![
                row(1, 0, 0, r1),
                row(0, 0, 1, cap(p2)),
                row(1, 1, 0, cap(a * p1 / den)),
                row(1, 1, 0, r1 + cap(a * al * p1 / den)),
                row(1, 1, 1, cap((a * p1 + b * g * p2) / den) + cap(gb * p2)),
                row(1, 1, 1, r1 + cap((a * al * p1 + b * g * p2) / den) + cap(gb * p2)),
            ]
        }
        InnerKind::S3 => {
            let den = 1.0 + a * ab * p1 + b * gb * p2;
            let r2 = cap(a * al * p1 / den);
            let r23 = cap((a * al * p1 + b * g * p2) / den) + cap(gb * p2);
            vec![
                row(0, 1, 0, r2),
                row(0, 0, 1, cap(p2)),
                row(1, 1, 0, cap(ab * p1) + r2),
                row(1, 1, 0, cap(p1)),
                row(0, 1, 1, r23),
                row(1, 1, 1, cap(ab * p1) + r23),
            ]
        }
        InnerKind::S4 => {
            let den = 1.0 + a * ab * p1 + b * gb * p2;
            vec![
                row(1, 0, 0, cap(ab * p1)),
                row(0, 1, 0, cap(a * al * p1 / den)),
                row(0, 0, 1, cap(p2)),
                row(0, 1, 1, cap((a * al * p1 + b * g * p2) / den) + cap(gb * p2)),
            ]
        }
    }
}

pub(crate) fn rows_to_system(rows: &[GaussRow], names: &[&str]) -> Result<LinSystem> {
    let mut sys = LinSystem::new(names)?.all_nonneg();
    for r in rows {
        let terms: Vec<(&str, f64)> = names
            .iter()
            .zip(r.coeffs)
            .filter(|(_, c)| *c != 0.0)
            .map(|(n, c)| (*n, c))
            .collect();
        sys.add_f64(&terms, Sense::Le, r.rhs)?;
    }
    Ok(sys)
}

/// Inner bound at one split as a system over `(R1, R2, R3)`.
pub fn eval_gauss_inner(kind: InnerKind, p: &GbicParams, s: SplitParams) -> Result<LinSystem> {
    p.validate()?;
    unit("alpha", s.alpha)?;
    unit("gamma", s.gamma)?;
    rows_to_system(&inner_rows(kind, p, s), &["R1", "R2", "R3"])
}

/// Largest `R2` with `(r1, R2, r3)` satisfying the rows, if any.
pub fn slice_r2_at(rows: &[GaussRow], r1: f64, r3: f64) -> Option<f64> {
    let mut best = f64::INFINITY;
    for r in rows {
        let rest = r.rhs - r.coeffs[0] * r1 - r.coeffs[2] * r3;
        if r.coeffs[1] == 0.0 {
            if rest < -SLICE_TOL {
                return None;
            }
        } else {
            best = best.min(rest / r.coeffs[1]);
        }
    }
    (best >= -SLICE_TOL).then_some(best.max(0.0))
}

/// Vertices of the `(R1, R2)` polygon cut out by the rows at fixed `r3`.
pub fn slice_corners(rows: &[GaussRow], r3: f64) -> Vec<RatePoint> {
    let mut lines: Vec<([f64; 2], f64)> = rows
        .iter()
        .map(|r| ([r.coeffs[0], r.coeffs[1]], r.rhs - r.coeffs[2] * r3))
        .collect();
    lines.push(([-1.0, 0.0], 0.0));
    lines.push(([0.0, -1.0], 0.0));
    let feasible = |x: &[f64; 2]| {
        lines
            .iter()
            .all(|(c, h)| c[0] * x[0] + c[1] * x[1] <= h + SLICE_TOL * h.abs().max(1.0))
    };
    let mut out: Vec<RatePoint> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let ([a, b], e) = lines[i];
            let ([c, d], f) = lines[j];
            let det = a * d - b * c;
            if det.abs() < 1e-15 {
                continue;
            }
            let x = [(e * d - b * f) / det, (a * f - e * c) / det];
            if !feasible(&x) {
                continue;
            }
            let x = [x[0].max(0.0), x[1].max(0.0)];
            if !out.iter().any(|p| (p[0] - x[0]).abs() <= 1e-12 && (p[1] - x[1]).abs() <= 1e-12) {
                out.push(x.to_vec());
            }
        }
    }
    out
}

/// `(R1 max, R2 max)` of an outer-bound slice, or `None` when `r3` exceeds `C(P2)`.
pub fn outer_box(kind: OuterKind, p: &GbicParams, alpha: f64, r3: f64) -> Option<[f64; 2]> {
    let (p1, p2, a, b) = (p.P1, p.P2, p.a, p.b);
    if r3 > cap(p2) + SLICE_TOL || r3 < 0.0 {
        return None;
    }
    let (al, ab) = (alpha, 1.0 - alpha);
    let bounds = match kind {
        OuterKind::O1 | OuterKind::O1Loose => {
            let xb = xi(b, r3);
            let mut r2 = (cap(a * al * p1 + b * p2) - xb + 0.5).min(cap(a * al * p1));
            if kind == OuterKind::O1 {
                r2 = r2.min(cap(a * p1 + b * p2) - xb);
            }
            [cap(ab * p1 / (1.0 + al * p1)), r2]
        }
        OuterKind::O2 => {
            let r2 = cap(a * al * p1).min(cap(a * p1 + b * p2) - xi(b, r3));
            [cap(ab * p1 / (1.0 + al * p1)), r2]
        }
        OuterKind::O4 => {
            let epi = if 1.0 - a < 1e-12 {
                cap((al * p1 + b * p2) / (1.0 + ab * p1))
            } else {
                let t = 4f64.powf(xi(b / (1.0 - a), r3));
                let num = a * al * p1 + b * p2 + (1.0 - a) * (1.0 - t);
                let den = a + a * ab * p1 + (1.0 - a) * t;
                cap(num / den)
            };
            [cap(ab * p1), epi.min(cap(a * al * p1 / (1.0 + a * ab * p1)))]
        }
    };
    Some([bounds[0], bounds[1].max(0.0)])
}

/// Outer-bound slice at fixed `r3` as a system over `(R1, R2)`; `None` for an empty slice.
pub fn eval_gauss_outer(kind: OuterKind, p: &GbicParams, alpha: f64, r3: f64) -> Result<Option<LinSystem>> {
    p.validate()?;
    unit("alpha", alpha)?;
    if !r3.is_finite() || r3 < 0.0 {
        return validation(format!("R3 must be finite and nonnegative, got {r3}"));
    }
    let Some([r1, r2]) = outer_box(kind, p, alpha, r3) else {
        return Ok(None);
    };
    rows_to_system(&[row(1, 0, 0, r1), row(0, 1, 0, r2)], &["R1", "R2"]).map(Some)
}
