use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::dmbic::{DmBicChannel, FactoredInput, InputLaw, SimpleInput};
use crate::error::{validation, Result};

/// Structural constraint imposed on the random channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Generic,
    /// Y2 is Y1 passed through a kernel that may also see X2.
    Cognizant,
    /// `Y2 = (Ya(x1), Yb(x1,x2))` and Y1 is a degraded Ya.
    Oblivious,
    /// `Y2 = (Ya(x1), Yb(x2))` and Y3 is a degraded Yb.
    Strong,
    /// p3 uniform over Y3.
    Y3Useless,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawKind {
    Simple,
    Factored,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub seed: u64,
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    /// Ignored by the oblivious and strong constructions, which use `|Ya| |Yb|`.
    pub y2: usize,
    pub y3: usize,
    pub q: usize,
    pub u1: usize,
    pub v1: usize,
    pub v2: usize,
    pub u2: usize,
    /// Symmetric Dirichlet concentration for every random pmf.
    pub density: f64,
    pub kind: InstanceKind,
    pub law: LawKind,
}

impl InstanceSpec {
    /// Binary alphabets everywhere, flat Dirichlet.
    pub fn binary(seed: u64, kind: InstanceKind, law: LawKind) -> InstanceSpec {
        InstanceSpec {
            seed,
            x1: 2,
            x2: 2,
            y1: 2,
            y2: 2,
            y3: 2,
            q: 1,
            u1: 2,
            v1: 2,
            v2: 2,
            u2: 2,
            density: 1.0,
            kind,
            law,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub channel: DmBicChannel,
    pub input: InputLaw,
}

impl Instance {
    pub fn simple(&self) -> Option<&SimpleInput> {
        match &self.input {
            InputLaw::Simple(s) => Some(s),
            InputLaw::Factored(_) => None,
        }
    }

    pub fn factored(&self) -> Option<&FactoredInput> {
        match &self.input {
            InputLaw::Factored(f) => Some(f),
            InputLaw::Simple(_) => None,
        }
    }
}

struct Draw {
    rng: ChaCha8Rng,
    gamma: Gamma<f64>,
}

impl Draw {
    fn pmf(&mut self, n: usize) -> Vec<f64> {
        let mut v: Vec<f64> = (0..n).map(|_| self.gamma.sample(&mut self.rng) + 1e-12).collect();
        let s: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= s);
        v
    }

    /// `t[out][in]`, one pmf per input symbol.
    fn kernel(&mut self, n_out: usize, n_in: usize) -> Vec<Vec<f64>> {
        let cols: Vec<Vec<f64>> = (0..n_in).map(|_| self.pmf(n_out)).collect();
        (0..n_out).map(|o| cols.iter().map(|c| c[o]).collect()).collect()
    }
}

fn compose(k: &[Vec<f64>], a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    // (k . a)[o][i] = sum_m k[o][m] a[m][i]
    let n_in = a[0].len();
    k.iter()
        .map(|row| (0..n_in).map(|i| row.iter().zip(a).map(|(x, am)| x * am[i]).sum()).collect())
        .collect()
}

fn channel(spec: &InstanceSpec, d: &mut Draw) -> DmBicChannel {
    let (x1, x2) = (spec.x1, spec.x2);
    match spec.kind {
        InstanceKind::Generic | InstanceKind::Y3Useless => {
            let p1 = d.kernel(spec.y1, x1);
            let flat = d.kernel(spec.y2, x1 * x2);
            let p2 = (0..spec.y2)
                .map(|y| (0..x1).map(|a| (0..x2).map(|b| flat[y][a * x2 + b]).collect()).collect())
                .collect();
            let p3 = if spec.kind == InstanceKind::Y3Useless {
                vec![vec![1.0 / spec.y3 as f64; x2]; spec.y3]
            } else {
                d.kernel(spec.y3, x2)
            };
            DmBicChannel { x1, x2, y1: spec.y1, y2: spec.y2, y3: spec.y3, p1, p2, p3 }
        }
        InstanceKind::Cognizant => {
            let p1 = d.kernel(spec.y1, x1);
            let k = d.kernel(spec.y2, spec.y1 * x2); // k[y2][y1*x2 + b]
            let p2 = (0..spec.y2)
                .map(|y| {
                    (0..x1)
                        .map(|a| (0..x2).map(|b| (0..spec.y1).map(|m| k[y][m * x2 + b] * p1[m][a]).sum()).collect())
                        .collect()
                })
                .collect();
            let p3 = d.kernel(spec.y3, x2);
            DmBicChannel { x1, x2, y1: spec.y1, y2: spec.y2, y3: spec.y3, p1, p2, p3 }
        }
        InstanceKind::Oblivious => {
            let (ya, yb) = (2, 2);
            let a = d.kernel(ya, x1);
            let bflat = d.kernel(yb, x1 * x2);
            let k = d.kernel(spec.y1, ya);
            let p1 = compose(&k, &a);
            let p2 = (0..ya * yb)
                .map(|y| {
                    let (i, j) = (y / yb, y % yb);
                    (0..x1).map(|s| (0..x2).map(|t| a[i][s] * bflat[j][s * x2 + t]).collect()).collect()
                })
                .collect();
            let p3 = d.kernel(spec.y3, x2);
            DmBicChannel { x1, x2, y1: spec.y1, y2: ya * yb, y3: spec.y3, p1, p2, p3 }
        }
        InstanceKind::Strong => {
            let (ya, yb) = (2, 2);
            let p1 = d.kernel(spec.y1, x1);
            let a = d.kernel(ya, x1);
            let b = d.kernel(yb, x2);
            let k = d.kernel(spec.y3, yb);
            let p3 = compose(&k, &b);
            let p2 = (0..ya * yb)
                .map(|y| {
                    let (i, j) = (y / yb, y % yb);
                    (0..x1).map(|s| (0..x2).map(|t| a[i][s] * b[j][t]).collect()).collect()
                })
                .collect();
            DmBicChannel { x1, x2, y1: spec.y1, y2: ya * yb, y3: spec.y3, p1, p2, p3 }
        }
    }
}

fn simple_law(spec: &InstanceSpec, ch: &DmBicChannel, d: &mut Draw) -> SimpleInput {
    SimpleInput {
        p_u1: d.pmf(spec.u1),
        p_x1: d.kernel(ch.x1, spec.u1),
        p_u2: d.pmf(spec.u2),
        p_x2: d.kernel(ch.x2, spec.u2),
    }
}

fn factored_law(spec: &InstanceSpec, ch: &DmBicChannel, d: &mut Draw) -> FactoredInput {
    let (q, u1, v1, v2, u2) = (spec.q, spec.u1, spec.v1, spec.v2, spec.u2);
    let p_q = d.pmf(q);
    let p_u1 = d.kernel(u1, q);
    let joint_v = d.kernel(v1 * v2, u1 * q); // [v1*v2][u1*q]
    let p_v1v2 = (0..v1)
        .map(|a| {
            (0..v2)
                .map(|b| (0..u1).map(|u| (0..q).map(|t| joint_v[a * v2 + b][u * q + t]).collect()).collect())
                .collect()
        })
        .collect();
    let p_u2 = d.kernel(u2, q);
    let xk = d.kernel(ch.x2, u2 * q);
    let p_x2 = (0..ch.x2)
        .map(|x| (0..u2).map(|u| (0..q).map(|t| xk[x][u * q + t]).collect()).collect())
        .collect();
    let f = (0..u1)
        .map(|_| (0..v1).map(|_| (0..v2).map(|_| d.rng.random_range(0..ch.x1)).collect()).collect())
        .collect();
    FactoredInput { q, u1, v1, v2, u2, p_q, p_u1, p_v1v2, p_u2, p_x2, f }
}

/// Deterministic random channel and input law for a spec.
pub fn random_instance(spec: &InstanceSpec) -> Result<Instance> {
    let sizes = [spec.x1, spec.x2, spec.y1, spec.y2, spec.y3, spec.q, spec.u1, spec.v1, spec.v2, spec.u2];
    if sizes.contains(&0) {
        return validation("instance: alphabet sizes must be positive");
    }
    let gamma = Gamma::new(spec.density, 1.0)
        .map_err(|e| crate::Error::Validation(format!("instance density: {e}")))?;
    let mut d = Draw {
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        gamma,
    };
    let channel = channel(spec, &mut d);
    let input = match spec.law {
        LawKind::Simple => InputLaw::Simple(simple_law(spec, &channel, &mut d)),
        LawKind::Factored => InputLaw::Factored(factored_law(spec, &channel, &mut d)),
    };
    channel.validate()?;
    input.validate(&channel)?;
    Ok(Instance { channel, input })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_bits() {
        for kind in [
            InstanceKind::Generic,
            InstanceKind::Cognizant,
            InstanceKind::Oblivious,
            InstanceKind::Strong,
            InstanceKind::Y3Useless,
        ] {
            for law in [LawKind::Simple, LawKind::Factored] {
                let s = InstanceSpec::binary(0, kind, law);
                let a = random_instance(&s).unwrap();
                let b = random_instance(&s).unwrap();
                assert_eq!(a.channel, b.channel);
                assert_eq!(a.input, b.input);
            }
        }
    }

    #[test]
    fn seeds_differ() {
        let a = random_instance(&InstanceSpec::binary(1, InstanceKind::Generic, LawKind::Simple)).unwrap();
        let b = random_instance(&InstanceSpec::binary(2, InstanceKind::Generic, LawKind::Simple)).unwrap();
        assert_ne!(a.channel, b.channel);
    }
}
