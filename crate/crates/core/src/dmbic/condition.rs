use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use super::channel::{DmBicChannel, SimpleInput};
use super::joint::{joint_from_simple, mutual_info, Var};
use crate::error::{validation, Error, Result};

/// Margin below which a gap counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;

const ITERS: usize = 60;
const FD_STEP: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionKind {
    /// `I(U1;Y1) <= I(U1;Y2)` for all `p(u1,x1)p(x2)`.
    Oblivious,
    /// `I(U1;Y1) >= I(U1;Y2|X2)` for all `p(u1,x1)p(x2)`.
    Cognizant,
    /// `I(X2;Y2|X1) >= I(X2;Y3)` for all `p(x1)p(x2)`.
    Strong,
    /// `I(X2;Y2) >= I(X2;Y3)` for all `p(x1)p(x2)`.
    VeryStrong,
}

impl ConditionKind {
    pub const ALL: [ConditionKind; 4] = [
        ConditionKind::Oblivious,
        ConditionKind::Cognizant,
        ConditionKind::Strong,
        ConditionKind::VeryStrong,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConditionKind::Oblivious => "oblivious",
            ConditionKind::Cognizant => "cognizant",
            ConditionKind::Strong => "strong",
            ConditionKind::VeryStrong => "very_strong",
        }
    }

    fn has_aux(self) -> bool {
        matches!(self, ConditionKind::Oblivious | ConditionKind::Cognizant)
    }
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConditionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<ConditionKind> {
        let low = s.to_ascii_lowercase().replace('-', "_");
        ConditionKind::ALL
            .into_iter()
            .find(|k| k.name() == low)
            .ok_or_else(|| Error::Validation(format!("unknown condition '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    Violated,
    NotFalsified,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Violated => "violated",
            VerdictStatus::NotFalsified => "not-falsified",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ConditionWitness {
    pub input: SimpleInput,
    /// Gap at `input`, in bits.
    pub margin: f64,
}

#[derive(Clone, Debug)]
pub struct ConditionVerdict {
    pub kind: ConditionKind,
    pub status: VerdictStatus,
    /// Smallest gap seen over all starts.
    pub min_gap: f64,
    /// Present iff violated.
    pub witness: Option<ConditionWitness>,
    pub starts: usize,
}

/// Defining gap of the condition at one input law; negative means violated.
pub fn condition_gap(kind: ConditionKind, ch: &DmBicChannel, inp: &SimpleInput) -> Result<f64> {
    use Var::*;
    let j = joint_from_simple(ch, inp)?;
    let i = |a: &[Var], b: &[Var], c: &[Var]| mutual_info(&j, a, b, c);
    Ok(match kind {
        ConditionKind::Cognizant => i(&[U1], &[Y1], &[]) - i(&[U1], &[Y2], &[X2]),
        ConditionKind::Oblivious => i(&[U1], &[Y2], &[]) - i(&[U1], &[Y1], &[]),
        ConditionKind::Strong => i(&[X2], &[Y2], &[X1]) - i(&[X2], &[Y3], &[]),
        ConditionKind::VeryStrong => i(&[X2], &[Y2], &[]) - i(&[X2], &[Y3], &[]),
    })
}

/// Search space: a joint `p(u1,x1)` (or `p(x1)`) followed by `p(x2)`.
struct Layout {
    nu: usize,
    nx1: usize,
    nx2: usize,
}

impl Layout {
    fn first(&self) -> usize {
        self.nu * self.nx1
    }

    fn input(&self, v: &[f64]) -> SimpleInput {
        let (w, z) = v.split_at(self.first());
        let p_u1: Vec<f64> = (0..self.nu)
            .map(|u| w[u * self.nx1..(u + 1) * self.nx1].iter().sum())
            .collect();
        let p_x1 = (0..self.nx1)
            .map(|x| {
                (0..self.nu)
                    .map(|u| {
                        if p_u1[u] > 1e-300 {
                            w[u * self.nx1 + x] / p_u1[u]
                        } else {
                            1.0 / self.nx1 as f64
                        }
                    })
                    .collect()
            })
            .collect();
        SimpleInput {
            p_u1,
            p_x1,
            p_u2: vec![1.0],
            p_x2: z.iter().map(|&p| vec![p]).collect(),
        }
    }

    fn project(&self, v: &mut [f64]) {
        let (w, z) = v.split_at_mut(self.first());
        project_simplex(w);
        project_simplex(z);
    }
}

/// Euclidean projection onto the probability simplex.
pub(crate) fn project_simplex(v: &mut [f64]) {
    let mut s: Vec<f64> = v.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, &x) in s.iter().enumerate() {
        cum += x;
        let t = (cum - 1.0) / (k + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    for x in v.iter_mut() {
        *x = (*x - theta).max(0.0);
    }
    let total: f64 = v.iter().sum();
    for x in v.iter_mut() {
        *x /= total;
    }
}

fn dirichlet(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1) + 1e-12).collect();
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}

/// Multi-start projected descent on the gap. Start 0 is `U1 = X1` uniform with
/// uniform `X2`; the rest are Dirichlet draws from per-start seeded streams.
pub fn check_condition(
    kind: ConditionKind,
    ch: &DmBicChannel,
    budget: usize,
    seed: u64,
) -> Result<ConditionVerdict> {
    ch.validate()?;
    if budget == 0 {
        return validation("budget must be at least 1");
    }
    let lay = Layout {
        nu: if kind.has_aux() { ch.x1 + 1 } else { 1 },
        nx1: ch.x1,
        nx2: ch.x2,
    };
    let gap = |v: &[f64]| condition_gap(kind, ch, &lay.input(v)).unwrap_or(f64::INFINITY);

    let runs: Vec<(f64, Vec<f64>)> = (0..budget)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s as u64));
            let mut v = if s == 0 {
                let mut w = vec![0.0; lay.first()];
                for x in 0..lay.nx1 {
                    let u = if kind.has_aux() { x } else { 0 };
                    w[u * lay.nx1 + x] = 1.0 / lay.nx1 as f64;
                }
                w.extend(std::iter::repeat_n(1.0 / lay.nx2 as f64, lay.nx2));
                w
            } else {
                let mut w = dirichlet(&mut rng, lay.first());
                w.extend(dirichlet(&mut rng, lay.nx2));
                w
            };
            let mut g = gap(&v);
            let mut step = 0.5;
            for _ in 0..ITERS {
                if g < -VIOLATION_TOL {
                    break;
                }
                let grad: Vec<f64> = (0..v.len())
                    .map(|k| {
                        let mut t = v.clone();
                        t[k] += FD_STEP;
                        (gap(&t) - g) / FD_STEP
                    })
                    .collect();
                let mut moved = false;
                while step > 1e-6 {
                    let mut t: Vec<f64> = v.iter().zip(&grad).map(|(x, d)| x - step * d).collect();
                    lay.project(&mut t);
                    let gt = gap(&t);
                    if gt < g {
                        v = t;
                        g = gt;
                        moved = true;
                        step *= 1.5;
                        break;
                    }
                    step *= 0.5;
                }
                if !moved {
                    break;
                }
            }
            (g, v)
        })
        .collect();

    let (best, v) = runs
        .into_iter()
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("budget >= 1");
    let violated = best < -VIOLATION_TOL;
    Ok(ConditionVerdict {
        kind,
        status: if violated {
            VerdictStatus::Violated
        } else {
            VerdictStatus::NotFalsified
        },
        min_gap: best,
        witness: violated.then(|| ConditionWitness {
            input: lay.input(&v),
            margin: best,
        }),
        starts: budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bsc(e: f64) -> Vec<Vec<f64>> {
        vec![vec![1.0 - e, e], vec![e, 1.0 - e]]
    }

    #[test]
    fn projection_lands_on_simplex() {
        let mut v = vec![0.9, -0.3, 0.8];
        project_simplex(&mut v);
        assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(v.iter().all(|&x| x >= 0.0));
        assert!((v[0] - 0.55).abs() < 1e-12 && (v[2] - 0.45).abs() < 1e-12);
    }

    #[test]
    fn useless_y3_is_strong() {
        let ch = DmBicChannel {
            x1: 2,
            x2: 2,
            y1: 2,
            y2: 2,
            y3: 2,
            p1: bsc(0.1),
            p2: vec![vec![vec![0.9, 0.2], vec![0.4, 0.7]], vec![vec![0.1, 0.8], vec![0.6, 0.3]]],
            p3: vec![vec![0.5, 0.5], vec![0.5, 0.5]],
        };
        let v = check_condition(ConditionKind::Strong, &ch, 8, 1).unwrap();
        assert_eq!(v.status, VerdictStatus::NotFalsified);
        assert!(v.min_gap >= -1e-12);
    }

    #[test]
    fn deaf_receiver_two_breaks_oblivious() {
        let ch = DmBicChannel {
            x1: 2,
            x2: 2,
            y1: 2,
            y2: 2,
            y3: 2,
            p1: bsc(0.05),
            p2: vec![vec![vec![0.9, 0.2], vec![0.9, 0.2]], vec![vec![0.1, 0.8], vec![0.1, 0.8]]],
            p3: bsc(0.2),
        };
        let v = check_condition(ConditionKind::Oblivious, &ch, 4, 0).unwrap();
        assert_eq!(v.status, VerdictStatus::Violated);
        let w = v.witness.unwrap();
        assert!(w.margin < -0.5);
        // structured start: U1 = X1 uniform
        assert!((condition_gap(ConditionKind::Oblivious, &ch, &w.input).unwrap() - w.margin).abs() < 1e-12);
    }

    #[test]
    fn same_seed_same_verdict() {
        let ch = DmBicChannel {
            x1: 2,
            x2: 2,
            y1: 2,
            y2: 2,
            y3: 2,
            p1: bsc(0.2),
            p2: vec![vec![vec![0.7, 0.4], vec![0.3, 0.1]], vec![vec![0.3, 0.6], vec![0.7, 0.9]]],
            p3: bsc(0.3),
        };
        let a = check_condition(ConditionKind::Cognizant, &ch, 6, 9).unwrap();
        let b = check_condition(ConditionKind::Cognizant, &ch, 6, 9).unwrap();
        assert_eq!(a.min_gap.to_bits(), b.min_gap.to_bits());
    }
}
