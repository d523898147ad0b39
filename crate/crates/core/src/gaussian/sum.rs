use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{inner_rows, outer_box, rows_to_system, GaussRow, InnerKind, OuterKind};
use super::params::{cap, unit, xi, GbicParams, Regime, SplitParams};
use crate::error::{validation, Error, Result};
use crate::polyhedra::{LinSystem, RatePoint};

/// Which closed form or grid component produced a sum rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumBranch {
    /// Regime A with `b < 1`.
    WeakInterferer,
    /// Regime A with `b >= 1`.
    StrongInterferer,
    Rs1,
    Rs2,
    /// Regime C, where the value is the sum capacity.
    SumCapacity,
}

impl fmt::Display for SumBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumBranch::WeakInterferer => "b<1",
            SumBranch::StrongInterferer => "b>=1",
            SumBranch::Rs1 => "Rs1",
            SumBranch::Rs2 => "Rs2",
            SumBranch::SumCapacity => "sum-capacity-exact",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumRate {
    pub value: f64,
    pub branch: SumBranch,
}

/// Both components of the regime-B sum rate plus the outer value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeBSum {
    pub rs1: f64,
    /// Grid split attaining `rs1`.
    pub rs1_at: SplitParams,
    pub rs2: f64,
    pub rs: f64,
    pub ro: f64,
}

pub(crate) fn grid_points(grid: usize) -> Vec<f64> {
    if grid < 2 {
        return vec![0.0, 1.0];
    }
    (0..grid).map(|i| i as f64 / (grid - 1) as f64).collect()
}

/// Largest `R1+R2+R3` over the rows, all rates nonnegative.
fn lp_sum(kind: InnerKind, rows: &[GaussRow]) -> f64 {
    let r = |i: usize| rows[i].rhs;
    match kind {
        // rows: R1, R2, R3, R2+R3
        InnerKind::S1 | InnerKind::S4 => r(0) + (r(1) + r(2)).min(r(3)),
        // rows: R1, R3, R1+R2, R1+R2, sum, sum
        InnerKind::S2 => (r(2).min(r(3)) + r(1)).min(r(4)).min(r(5)),
        // rows: R2, R3, R1+R2, R1+R2, R2+R3, sum
        InnerKind::S3 => (r(2).min(r(3)) + r(1)).min(r(5)),
    }
}

/// Maximum of the inner bound's sum rate over a square `(alpha, gamma)` grid.
pub fn grid_sum(kind: InnerKind, p: &GbicParams, grid: usize) -> (f64, SplitParams) {
    let pts = grid_points(grid);
    pts.par_iter()
        .map(|&alpha| {
            let mut best = (f64::NEG_INFINITY, SplitParams { alpha, gamma: 0.0 });
            for &gamma in &pts {
                let s = SplitParams { alpha, gamma };
                let v = lp_sum(kind, &inner_rows(kind, p, s));
                if v > best.0 {
                    best = (v, s);
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, SplitParams { alpha: 0.0, gamma: 0.0 }),
            |x, y| if y.0 > x.0 { y } else { x },
        )
}

/// Golden-section refinement of a grid maximum of `f` on `[0, 1]`.
pub(crate) fn maximize_1d(f: impl Fn(f64) -> f64, grid: usize) -> (f64, f64) {
    let pts = grid_points(grid.max(3));
    let (mut bi, mut bv) = (0, f64::NEG_INFINITY);
    for (i, &x) in pts.iter().enumerate() {
        let v = f(x);
        if v > bv {
            bi = i;
            bv = v;
        }
    }
    let (mut lo, mut hi) = (pts[bi.saturating_sub(1)], pts[(bi + 1).min(pts.len() - 1)]);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let (m1, m2) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let x = 0.5 * (lo + hi);
    let v = f(x);
    if v > bv {
        (v, x)
    } else {
        (bv, pts[bi])
    }
}

fn regime_a_sum(p: &GbicParams) -> SumRate {
    let (p1, p2, a, b) = (p.P1, p.P2, p.a, p.b);
    if b < 1.0 {
        SumRate {
            value: cap(a * p1 / (1.0 + b * p2)) + cap(p2),
            branch: SumBranch::WeakInterferer,
        }
    } else {
        SumRate {
            value: cap(a * p1 + b * p2).min(cap(a * p1) + cap(p2)),
            branch: SumBranch::StrongInterferer,
        }
    }
}

/// Outer sum rate from the O2 slices at `R3 = C(P2)`. The maximizing split
/// solves `C(a alpha P1) = C(aP1+bP2) - xi(b)` or sits at `alpha = 1`.
fn ro_o2(p: &GbicParams) -> f64 {
    let f = |al: f64| {
        let [r1, r2] = outer_box(OuterKind::O2, p, al, cap(p.P2)).unwrap_or([0.0, 0.0]);
        r1 + r2 + cap(p.P2)
    };
    let k = cap(p.a * p.P1 + p.b * p.P2) - xi(p.b, cap(p.P2));
    let star = ((4f64.powf(k) - 1.0) / (p.a * p.P1)).clamp(0.0, 1.0);
    f(star).max(f(1.0)).max(maximize_1d(f, 201).0)
}

/// Regime-B components: `Rs1` by grid search over `(alpha1, gamma1)`,
/// `Rs2 = C(P1) + C(P2)` and the O2 outer value.
pub fn regime_b_sum(p: &GbicParams, grid: usize) -> Result<RegimeBSum> {
    p.validate()?;
    if grid < 2 {
        return validation("regime-B sum rate needs grid >= 2");
    }
    let (rs1, rs1_at) = grid_sum(InnerKind::S2, p, grid);
    let rs2 = cap(p.P1) + cap(p.P2);
    Ok(RegimeBSum {
        rs1,
        rs1_at,
        rs2,
        rs: rs1.max(rs2),
        ro: ro_o2(p),
    })
}

/// Largest achievable sum rate of the regime's inner bound.
pub fn sum_rate(p: &GbicParams, grid: usize) -> Result<SumRate> {
    p.validate()?;
    Ok(match p.regime() {
        Regime::A => regime_a_sum(p),
        Regime::B => {
            let s = regime_b_sum(p, grid)?;
            SumRate {
                value: s.rs,
                branch: if s.rs1 > s.rs2 { SumBranch::Rs1 } else { SumBranch::Rs2 },
            }
        }
        Regime::C => SumRate {
            value: cap(p.P1) + cap(p.P2),
            branch: SumBranch::SumCapacity,
        },
    })
}

/// Upper bound on the sum rate from the regime's outer-bound slices.
pub fn sum_outer(p: &GbicParams, grid: usize) -> Result<f64> {
    p.validate()?;
    let kind = match p.regime() {
        Regime::A => OuterKind::O1,
        Regime::B => return Ok(ro_o2(p)),
        Regime::C => OuterKind::O4,
    };
    let top = cap(p.P2);
    let r3s: Vec<f64> = grid_points(101).into_iter().map(|t| t * top).collect();
    let f = |al: f64| {
        r3s.iter()
            .filter_map(|&r3| outer_box(kind, p, al, r3).map(|[x, y]| x + y + r3))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    Ok(maximize_1d(f, grid.max(201)).0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialKind {
    /// Regime A with a very strong interferer: a box.
    AVstrong,
    /// Regime C with a very strong interferer: a box.
    CVstrong,
    /// Regime C, `a + b <= 1`: boundary point with the interferer at full rate.
    T9InnerFace,
    /// Regime C, small interferer rate: boundary point.
    T9LowBeta,
}

impl SpecialKind {
    pub const ALL: [SpecialKind; 4] = [
        SpecialKind::AVstrong,
        SpecialKind::CVstrong,
        SpecialKind::T9InnerFace,
        SpecialKind::T9LowBeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialKind::AVstrong => "A_VSTRONG",
            SpecialKind::CVstrong => "C_VSTRONG",
            SpecialKind::T9InnerFace => "T9_INNERFACE",
            SpecialKind::T9LowBeta => "T9_LOWBETA",
        }
    }
}

impl fmt::Display for SpecialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpecialKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<SpecialKind> {
        SpecialKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Validation(format!("unknown capacity kind `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub enum SpecialCapacity {
    /// Capacity region slice at the given split, with its dominant corner.
    Region { system: LinSystem, corner: RatePoint },
    Point(RatePoint),
}

impl SpecialCapacity {
    pub fn corner(&self) -> &RatePoint {
        match self {
            SpecialCapacity::Region { corner, .. } => corner,
            SpecialCapacity::Point(p) => p,
        }
    }
}

/// Slack on the stated preconditions, to absorb decimal inputs such as `0.4 + 0.6`.
const PRE_TOL: f64 = 1e-12;

fn need(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(what()))
    }
}

/// Known capacity boxes and boundary points.
pub fn capacity_special(kind: SpecialKind, p: &GbicParams, alpha: f64, beta: f64) -> Result<SpecialCapacity> {
    p.validate()?;
    unit("alpha", alpha)?;
    unit("beta", beta)?;
    let (p1, p2, a, b) = (p.P1, p.P2, p.a, p.b);
    let (al, ab) = (alpha, 1.0 - alpha);
    let strong_b = || {
        need(b + PRE_TOL >= 1.0 + a * p1, || {
            format!("b >= 1 + a*P1 fails: {b} < {}", 1.0 + a * p1)
        })
    };
    let weak_a = || need(a <= 1.0 + PRE_TOL, || format!("a <= 1 fails: a = {a}"));
    let boxed = |corner: [f64; 3]| -> Result<SpecialCapacity> {
        let rows: Vec<GaussRow> = (0..3)
            .map(|i| {
                let mut coeffs = [0.0; 3];
                coeffs[i] = 1.0;
                GaussRow { coeffs, rhs: corner[i] }
            })
            .collect();
        Ok(SpecialCapacity::Region {
            system: rows_to_system(&rows, &["R1", "R2", "R3"])?,
            corner: corner.to_vec(),
        })
    };
    match kind {
        SpecialKind::AVstrong => {
            need(a + PRE_TOL >= 1.0 + b * p2, || {
                format!("a >= 1 + b*P2 fails: {a} < {}", 1.0 + b * p2)
            })?;
            strong_b()?;
            boxed([cap(ab * p1 / (1.0 + al * p1)), cap(a * al * p1), cap(p2)])
        }
        SpecialKind::CVstrong => {
            weak_a()?;
            strong_b()?;
            boxed([cap(ab * p1), cap(a * al * p1 / (1.0 + a * ab * p1)), cap(p2)])
        }
        SpecialKind::T9LowBeta => {
            weak_a()?;
            let lim = 1f64.min(b / (1.0 + a * p1));
            need(beta <= lim + PRE_TOL, || format!("beta <= min(1, b/(1+a*P1)) fails: {beta} > {lim}"))?;
            Ok(SpecialCapacity::Point(vec![
                cap(ab * p1),
                cap(a * al * p1 / (1.0 + a * ab * p1)),
                cap(beta * p2),
            ]))
        }
        SpecialKind::T9InnerFace => {
            weak_a()?;
            need(a + b <= 1.0 + PRE_TOL, || format!("a + b <= 1 fails: a + b = {}", a + b))?;
            Ok(SpecialCapacity::Point(vec![
                cap(ab * p1),
                cap(a * al * p1 / (1.0 + a * ab * p1 + b * p2)),
                cap(p2),
            ]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::c_of;
    use approx::assert_abs_diff_eq;

    fn c(x: f64) -> f64 {
        c_of(x).unwrap()
    }

    #[test]
    fn regime_a_closed_form() {
        let p = GbicParams::new(6.0, 3.0, 4.0, 1.0).unwrap();
        let s = sum_rate(&p, 201).unwrap();
        assert_eq!(s.branch, SumBranch::StrongInterferer);
        assert_abs_diff_eq!(s.value, c(27.0).min(c(24.0) + c(3.0)), epsilon = 1e-12);
        let weak = GbicParams::new(6.0, 3.0, 4.0, 0.5).unwrap();
        let s = sum_rate(&weak, 201).unwrap();
        assert_eq!(s.branch, SumBranch::WeakInterferer);
        assert_abs_diff_eq!(s.value, c(24.0 / 2.5) + c(3.0), epsilon = 1e-12);
    }

    #[test]
    fn regime_c_and_b() {
        let p = GbicParams::new(10.0, 8.0, 0.4, 0.6).unwrap();
        let s = sum_rate(&p, 3).unwrap();
        assert_eq!(s.branch, SumBranch::SumCapacity);
        assert_abs_diff_eq!(s.value, c(10.0) + c(8.0), epsilon = 1e-12);
        let b = regime_b_sum(&GbicParams::new(6.0, 3.0, 2.0, 3.0).unwrap(), 51).unwrap();
        assert_abs_diff_eq!(b.rs2, c(6.0) + c(3.0), epsilon = 1e-12);
        assert!(b.rs <= b.ro + 1e-9);
    }

    #[test]
    fn specials() {
        let p5 = GbicParams::new(10.0, 8.0, 0.4, 0.6).unwrap();
        let pt = capacity_special(SpecialKind::T9LowBeta, &p5, 1.0, 0.1).unwrap();
        assert_abs_diff_eq!(pt.corner()[0], 0.0);
        assert_abs_diff_eq!(pt.corner()[1], c(4.0), epsilon = 1e-12);
        assert_abs_diff_eq!(pt.corner()[2], c(0.8), epsilon = 1e-12);
        let face = capacity_special(SpecialKind::T9InnerFace, &p5, 0.5, 0.0).unwrap();
        assert_abs_diff_eq!(face.corner()[1], c(2.0 / 7.8), epsilon = 1e-12);
        let err = capacity_special(SpecialKind::T9LowBeta, &p5, 1.0, 0.2).unwrap_err();
        assert!(err.to_string().contains("b/(1+a*P1)"), "{err}");
        let p3 = GbicParams::new(6.0, 3.0, 4.0, 1.0).unwrap();
        let err = capacity_special(SpecialKind::AVstrong, &p3, 1.0, 0.0).unwrap_err();
        assert!(err.to_string().contains("b >= 1 + a*P1"), "{err}");
        // both strength conditions only hold together when P1 P2 < 1
        let strong = GbicParams::new(0.1, 0.1, 3.0, 3.0).unwrap();
        let bx = capacity_special(SpecialKind::AVstrong, &strong, 1.0, 0.0).unwrap();
        assert_eq!(bx.corner(), &vec![0.0, c(0.3), c(0.1)]);
    }
}
