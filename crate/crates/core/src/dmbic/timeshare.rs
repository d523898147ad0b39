use super::channel::{DmBicChannel, SimpleInput};
use super::joint::{joint_from_input_pmf, joint_from_simple, Joint};
use super::region::{region_on_joint, RegionKind};
use crate::error::{validation, Result};
use crate::polyhedra::{contains, enumerate_vertices, pareto_filter, LinSystem, RatePoint};

pub const TIMESHARE_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct TimeshareReport {
    pub which: u8,
    pub lambda: f64,
    pub checked: usize,
    /// Mixed points that fell outside the merged-law region.
    pub outside: Vec<RatePoint>,
    pub merged: LinSystem,
}

impl TimeshareReport {
    pub fn contained(&self) -> bool {
        self.outside.is_empty()
    }
}

fn kind_for(which: u8) -> Result<RegionKind> {
    match which {
        1 => Ok(RegionKind::R1),
        2 => Ok(RegionKind::R2),
        _ => validation(format!("time-sharing index must be 1 or 2, got {which}")),
    }
}

/// Input law with the time-sharing variable folded into both auxiliaries:
/// `U1' = (U1_Q, Q)` and `U2' = (U2_Q, Q)`, block-encoded, with `P(Q = B) = lambda`.
pub fn merged_joint(ch: &DmBicChannel, a: &SimpleInput, b: &SimpleInput, lambda: f64) -> Result<Joint> {
    a.validate(ch)?;
    b.validate(ch)?;
    let (na1, nb1, na2, nb2) = (a.u1(), b.u1(), a.u2(), b.u2());
    let mut p = vec![vec![vec![vec![0.0; ch.x2]; na2 + nb2]; ch.x1]; na1 + nb1];
    for (w, law, off1, off2) in [(1.0 - lambda, a, 0, 0), (lambda, b, na1, na2)] {
        for u1 in 0..law.u1() {
            for x1 in 0..ch.x1 {
                for u2 in 0..law.u2() {
                    for x2 in 0..ch.x2 {
                        p[off1 + u1][x1][off2 + u2][x2] =
                            w * law.p_u1[u1] * law.p_x1[x1][u1] * law.p_u2[u2] * law.p_x2[x2][u2];
                    }
                }
            }
        }
    }
    joint_from_input_pmf(ch, &p)
}

/// Dominant extreme points of the region at one law.
pub fn region_dexps(kind: RegionKind, j: &Joint) -> Result<Vec<RatePoint>> {
    let sys = region_on_joint(kind, j)?;
    pareto_filter(&enumerate_vertices(&sys)?)
}

/// Checks that every mixture `(1-lambda) pA + lambda pB` of extreme points lies
/// in the region evaluated at the merged law.
pub fn verify_timesharing_closure(
    which: u8,
    ch: &DmBicChannel,
    a: &SimpleInput,
    b: &SimpleInput,
    lambda: f64,
) -> Result<TimeshareReport> {
    let kind = kind_for(which)?;
    if !(0.0..=1.0).contains(&lambda) {
        return validation(format!("lambda {lambda} outside [0,1]"));
    }
    let da = region_dexps(kind, &joint_from_simple(ch, a)?)?;
    let db = region_dexps(kind, &joint_from_simple(ch, b)?)?;
    let merged = region_on_joint(kind, &merged_joint(ch, a, b, lambda)?)?;
    let mut outside = Vec::new();
    let mut checked = 0;
    for pa in &da {
        for pb in &db {
            let m: RatePoint = pa.iter().zip(pb).map(|(x, y)| (1.0 - lambda) * x + lambda * y).collect();
            checked += 1;
            if !contains(&merged, &m, TIMESHARE_TOL) {
                outside.push(m);
            }
        }
    }
    Ok(TimeshareReport {
        which,
        lambda,
        checked,
        outside,
        merged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (DmBicChannel, SimpleInput, SimpleInput) {
        let ch = DmBicChannel {
            x1: 2,
            x2: 2,
            y1: 2,
            y2: 2,
            y3: 2,
            p1: vec![vec![0.9, 0.2], vec![0.1, 0.8]],
            p2: vec![vec![vec![0.7, 0.4], vec![0.3, 0.1]], vec![vec![0.3, 0.6], vec![0.7, 0.9]]],
            p3: vec![vec![0.85, 0.3], vec![0.15, 0.7]],
        };
        let a = SimpleInput {
            p_u1: vec![0.3, 0.7],
            p_x1: vec![vec![0.9, 0.2], vec![0.1, 0.8]],
            p_u2: vec![0.6, 0.4],
            p_x2: vec![vec![0.8, 0.3], vec![0.2, 0.7]],
        };
        let b = SimpleInput {
            p_u1: vec![1.0],
            p_x1: vec![vec![0.5], vec![0.5]],
            p_u2: vec![0.5, 0.5],
            p_x2: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        };
        (ch, a, b)
    }

    #[test]
    fn lambda_zero_reproduces_a() {
        let (ch, a, b) = setup();
        let r = verify_timesharing_closure(2, &ch, &a, &b, 0.0).unwrap();
        assert!(r.contained());
        let direct = region_on_joint(RegionKind::R2, &joint_from_simple(&ch, &a).unwrap()).unwrap();
        for p in enumerate_vertices(&direct).unwrap() {
            assert!(contains(&r.merged, &p, 1e-9));
        }
    }

    #[test]
    fn identical_laws() {
        let (ch, a, _) = setup();
        for w in [1, 2] {
            assert!(verify_timesharing_closure(w, &ch, &a, &a, 0.5).unwrap().contained());
        }
    }
}
