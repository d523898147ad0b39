use std::fmt;
use std::str::FromStr;

use super::channel::{DmBicChannel, SimpleInput};
use super::joint::{joint_from_simple, mutual_info, Joint, Var};
use super::region::RegionKind;
use crate::error::{Error, Result};
use crate::polyhedra::{RatePoint, DEDUP_TOL};

/// Closed-form dominant extreme point families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DexpKind {
    /// `{A,B,C,D}` of the cognizant region.
    L3,
    /// `{A,B}` of its reduced form.
    L4,
    /// `{E,F,G,H,I}` or `{E,F,G,J}` of the oblivious region.
    L5,
    /// `{E,F}` of its reduced form.
    L6,
}

impl DexpKind {
    pub const ALL: [DexpKind; 4] = [DexpKind::L3, DexpKind::L4, DexpKind::L5, DexpKind::L6];

    /// Region whose extreme points the family describes.
    pub fn region(self) -> RegionKind {
        match self {
            DexpKind::L3 => RegionKind::R2,
            DexpKind::L4 => RegionKind::R2P,
            DexpKind::L5 => RegionKind::R1,
            DexpKind::L6 => RegionKind::R1P,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DexpKind::L3 => "L3",
            DexpKind::L4 => "L4",
            DexpKind::L5 => "L5",
            DexpKind::L6 => "L6",
        }
    }
}

impl fmt::Display for DexpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DexpKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<DexpKind> {
        let up = s.to_ascii_uppercase();
        DexpKind::ALL
            .into_iter()
            .find(|k| k.name() == up)
            .ok_or_else(|| Error::Validation(format!("unknown DExP family '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledPoint {
    pub label: char,
    pub point: RatePoint,
}

fn pos(x: f64) -> f64 {
    x.max(0.0)
}

pub fn dexp_formula(kind: DexpKind, ch: &DmBicChannel, inp: &SimpleInput) -> Result<Vec<LabeledPoint>> {
    Ok(dexp_on_joint(kind, &joint_from_simple(ch, inp)?))
}

/// Evaluates the closed forms on a reduced-law joint. Coinciding points are merged,
/// keeping the first label.
pub fn dexp_on_joint(kind: DexpKind, j: &Joint) -> Vec<LabeledPoint> {
    use Var::*;
    let i = |a: &[Var], b: &[Var], c: &[Var]| mutual_info(j, a, b, c);
    let x3 = i(&[X2], &[Y3], &[]);
    let x3u = i(&[X2], &[Y3], &[U2]);
    let u2y3 = i(&[U2], &[Y3], &[]);

    let raw: Vec<(char, [f64; 3])> = match kind {
        DexpKind::L3 | DexpKind::L4 => {
            let i1 = i(&[X1], &[Y1], &[U1]);
            let i2 = i(&[U1], &[Y2], &[U2]);
            let u2y2 = i(&[U2], &[Y2], &[]);
            let u12 = i(&[U1, U2], &[Y2], &[]);
            let r3a = x3.min(u2y2 + x3u);
            let r2b = i2.min(pos(u12 - u2y3));
            let r3b = x3u + u2y3.min(u12);
            let mut v = vec![('A', [i1, i2, r3a]), ('B', [i1, r2b, r3b])];
            if kind == DexpKind::L3 {
                v.push(('C', [i1 + r2b, 0.0, r3b]));
                v.push(('D', [i1 + i2, 0.0, r3a]));
            }
            v
        }
        DexpKind::L5 | DexpKind::L6 => {
            let u1y1 = i(&[U1], &[Y1], &[]);
            let x1y2 = i(&[X1], &[Y2], &[U1, U2]);
            let xu2 = i(&[X1, U2], &[Y2], &[U1]);
            let u2y2g = i(&[U2], &[Y2], &[U1]);
            let r3e = x3.min(u2y2g + x3u);
            let e = [u1y1, x1y2, r3e];
            let f = [u1y1, x1y2.min(pos(xu2 - u2y3)), x3u + u2y3.min(xu2)];
            let mut v = vec![('E', e), ('F', f)];
            if kind == DexpKind::L5 {
                v.push(('G', [0.0, u1y1 + x1y2, r3e]));
                if u2y3 <= u1y1 + xu2 {
                    let d = (u2y2g - u2y3).min(0.0);
                    v.push(('H', [0.0, u1y1 + x1y2 + d, x3]));
                    v.push(('I', [u1y1 + (xu2 - u2y3).min(0.0), pos(x1y2 + d), x3]));
                } else {
                    v.push(('J', [0.0, 0.0, u1y1 + xu2 + x3u]));
                }
            }
            v
        }
    };

    let mut out: Vec<LabeledPoint> = Vec::new();
    for (label, p) in raw {
        let dup = out
            .iter()
            .any(|q| q.point.iter().zip(&p).all(|(a, b)| (a - b).abs() <= DEDUP_TOL));
        if !dup {
            out.push(LabeledPoint {
                label,
                point: p.to_vec(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn channel() -> DmBicChannel {
        DmBicChannel {
            x1: 2,
            x2: 2,
            y1: 2,
            y2: 2,
            y3: 2,
            p1: vec![vec![0.9, 0.2], vec![0.1, 0.8]],
            p2: vec![vec![vec![0.7, 0.4], vec![0.3, 0.1]], vec![vec![0.3, 0.6], vec![0.7, 0.9]]],
            p3: vec![vec![0.85, 0.3], vec![0.15, 0.7]],
        }
    }

    #[test]
    fn constant_u1_point_a() {
        let ch = channel();
        let inp = SimpleInput {
            p_u1: vec![1.0],
            p_x1: vec![vec![0.4], vec![0.6]],
            p_u2: vec![0.5, 0.5],
            p_x2: vec![vec![0.8, 0.3], vec![0.2, 0.7]],
        };
        let j = joint_from_simple(&ch, &inp).unwrap();
        let pts = dexp_on_joint(DexpKind::L3, &j);
        let a = &pts[0];
        assert_eq!(a.label, 'A');
        use Var::*;
        assert_abs_diff_eq!(a.point[0], mutual_info(&j, &[X1], &[Y1], &[]), epsilon = 1e-12);
        assert_abs_diff_eq!(a.point[1], 0.0, epsilon = 1e-12);
        let r3 = mutual_info(&j, &[X2], &[Y3], &[])
            .min(mutual_info(&j, &[U2], &[Y2], &[]) + mutual_info(&j, &[X2], &[Y3], &[U2]));
        assert_abs_diff_eq!(a.point[2], r3, epsilon = 1e-12);
    }

    #[test]
    fn reduced_families_are_small() {
        let ch = channel();
        let inp = SimpleInput {
            p_u1: vec![0.3, 0.7],
            p_x1: vec![vec![0.9, 0.2], vec![0.1, 0.8]],
            p_u2: vec![0.6, 0.4],
            p_x2: vec![vec![0.8, 0.3], vec![0.2, 0.7]],
        };
        assert!(dexp_formula(DexpKind::L4, &ch, &inp).unwrap().len() <= 2);
        assert!(dexp_formula(DexpKind::L6, &ch, &inp).unwrap().len() <= 2);
        let l5 = dexp_formula(DexpKind::L5, &ch, &inp).unwrap();
        assert!(l5.len() >= 3 && l5.len() <= 5);
    }
}
