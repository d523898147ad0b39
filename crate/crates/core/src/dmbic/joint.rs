use std::fmt;
use std::str::FromStr;

use super::channel::{DmBicChannel, FactoredInput, SimpleInput};
use crate::error::{validation, Error, Result};

/// Random variables of the channel model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    U1,
    V1,
    V2,
    U2,
    X1,
    X2,
    Y1,
    Y2,
    Y3,
}

impl Var {
    pub const ALL: [Var; 10] = [
        Var::Q,
        Var::U1,
        Var::V1,
        Var::V2,
        Var::U2,
        Var::X1,
        Var::X2,
        Var::Y1,
        Var::Y2,
        Var::Y3,
    ];

    fn bit(self) -> u16 {
        1 << (self as u16)
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "Q",
            Var::U1 => "U1",
            Var::V1 => "V1",
            Var::V2 => "V2",
            Var::U2 => "U2",
            Var::X1 => "X1",
            Var::X2 => "X2",
            Var::Y1 => "Y1",
            Var::Y2 => "Y2",
            Var::Y3 => "Y3",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;
    fn from_str(s: &str) -> Result<Var> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownVariable(s.to_string()))
    }
}

/// A set of variables as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u16);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn of(vars: &[Var]) -> VarSet {
        VarSet(vars.iter().fold(0, |m, v| m | v.bit()))
    }

    pub fn union(self, o: VarSet) -> VarSet {
        VarSet(self.0 | o.0)
    }

    pub fn minus(self, o: VarSet) -> VarSet {
        VarSet(self.0 & !o.0)
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & v.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_disjoint(self, o: VarSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.iter().map(Var::name).collect();
        f.write_str(&names.join(","))
    }
}

/// Dense joint pmf, row-major in `vars` order (last variable fastest).
#[derive(Clone, Debug)]
pub struct Joint {
    vars: Vec<Var>,
    sizes: Vec<usize>,
    p: Vec<f64>,
}

impl Joint {
    pub fn new(vars: Vec<Var>, sizes: Vec<usize>, p: Vec<f64>) -> Result<Joint> {
        if vars.len() != sizes.len() {
            return validation("joint: one size per variable");
        }
        if VarSet::of(&vars).iter().count() != vars.len() {
            return validation("joint: repeated variable");
        }
        let n: usize = sizes.iter().product();
        if p.len() != n {
            return validation(format!("joint: expected {n} entries, got {}", p.len()));
        }
        if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return validation("joint: entries must be nonnegative");
        }
        let s: f64 = p.iter().sum();
        if (s - 1.0).abs() > 1e-9 {
            return validation(format!("joint: total mass {s}"));
        }
        Ok(Joint { vars, sizes, p })
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn probs(&self) -> &[f64] {
        &self.p
    }

    pub fn size_of(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|&w| w == v).map(|i| self.sizes[i])
    }

    /// Probability of one full assignment given in `vars` order.
    pub fn prob(&self, idx: &[usize]) -> f64 {
        let flat = idx.iter().zip(&self.sizes).fold(0, |acc, (i, n)| acc * n + i);
        self.p[flat]
    }

    /// Marginal over the members of `set` present in this joint (joint order).
    /// Variables absent from the joint count as constants.
    pub fn marginal(&self, set: VarSet) -> Vec<f64> {
        let keep: Vec<bool> = self.vars.iter().map(|v| set.contains(*v)).collect();
        let out_len: usize = self
            .sizes
            .iter()
            .zip(&keep)
            .filter(|(_, k)| **k)
            .map(|(n, _)| *n)
            .product();
        let mut out = vec![0.0; out_len];
        let d = self.vars.len();
        let mut idx = vec![0usize; d];
        for &pv in &self.p {
            if pv > 0.0 {
                let mut o = 0;
                for k in 0..d {
                    if keep[k] {
                        o = o * self.sizes[k] + idx[k];
                    }
                }
                out[o] += pv;
            }
            for k in (0..d).rev() {
                idx[k] += 1;
                if idx[k] < self.sizes[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        out
    }

    /// Shannon entropy in bits of the variables in `set`.
    pub fn entropy(&self, set: VarSet) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        -self
            .marginal(set)
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| x * x.log2())
            .sum::<f64>()
    }
}

/// `I(A;B|C)` in bits. Sets may overlap; tiny negative round-off is clamped to 0.
pub fn mi_sets(joint: &Joint, a: VarSet, b: VarSet, c: VarSet) -> f64 {
    let v = joint.entropy(a.union(c)) + joint.entropy(b.union(c))
        - joint.entropy(a.union(b).union(c))
        - joint.entropy(c);
    v.max(0.0)
}

pub fn mutual_info(joint: &Joint, a: &[Var], b: &[Var], c: &[Var]) -> f64 {
    mi_sets(joint, VarSet::of(a), VarSet::of(b), VarSet::of(c))
}

/// Joint law of `(Q, U1, V1, V2, U2, X1, X2, Y1, Y2, Y3)`.
pub fn joint_from_factored(ch: &DmBicChannel, inp: &FactoredInput) -> Result<Joint> {
    ch.validate()?;
    inp.validate(ch)?;
    let vars = Var::ALL.to_vec();
    let sizes = vec![inp.q, inp.u1, inp.v1, inp.v2, inp.u2, ch.x1, ch.x2, ch.y1, ch.y2, ch.y3];
    let n: usize = sizes.iter().product();
    let mut p = Vec::with_capacity(n);
    for q in 0..inp.q {
        for u1 in 0..inp.u1 {
            for v1 in 0..inp.v1 {
                for v2 in 0..inp.v2 {
                    for u2 in 0..inp.u2 {
                        for x1 in 0..ch.x1 {
                            for x2 in 0..ch.x2 {
                                let base = if inp.f[u1][v1][v2] == x1 {
                                    inp.p_q[q]
                                        * inp.p_u1[u1][q]
                                        * inp.p_v1v2[v1][v2][u1][q]
                                        * inp.p_u2[u2][q]
                                        * inp.p_x2[x2][u2][q]
                                } else {
                                    0.0
                                };
                                for y1 in 0..ch.y1 {
                                    for y2 in 0..ch.y2 {
                                        for y3 in 0..ch.y3 {
                                            p.push(
                                                base * ch.p1[y1][x1] * ch.p2[y2][x1][x2] * ch.p3[y3][x2],
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Joint::new(vars, sizes, p)
}

/// Joint law of `(U1, X1, U2, X2, Y1, Y2, Y3)`.
pub fn joint_from_simple(ch: &DmBicChannel, inp: &SimpleInput) -> Result<Joint> {
    ch.validate()?;
    inp.validate(ch)?;
    let vars = vec![Var::U1, Var::X1, Var::U2, Var::X2, Var::Y1, Var::Y2, Var::Y3];
    let sizes = vec![inp.u1(), ch.x1, inp.u2(), ch.x2, ch.y1, ch.y2, ch.y3];
    let mut p = Vec::with_capacity(sizes.iter().product());
    for u1 in 0..inp.u1() {
        for x1 in 0..ch.x1 {
            for u2 in 0..inp.u2() {
                for x2 in 0..ch.x2 {
                    let base = inp.p_u1[u1] * inp.p_x1[x1][u1] * inp.p_u2[u2] * inp.p_x2[x2][u2];
                    for y1 in 0..ch.y1 {
                        for y2 in 0..ch.y2 {
                            for y3 in 0..ch.y3 {
                                p.push(base * ch.p1[y1][x1] * ch.p2[y2][x1][x2] * ch.p3[y3][x2]);
                            }
                        }
                    }
                }
            }
        }
    }
    Joint::new(vars, sizes, p)
}

/// Joint law of `(U1, X1, U2, X2, Y1, Y2, Y3)` from an arbitrary input pmf
/// `p_in[u1][x1][u2][x2]` (U1 and U2 need not be independent).
pub fn joint_from_input_pmf(ch: &DmBicChannel, p_in: &[Vec<Vec<Vec<f64>>>]) -> Result<Joint> {
    ch.validate()?;
    let nu1 = p_in.len();
    let nu2 = p_in.first().and_then(|a| a.first()).map_or(0, |b| b.len());
    let vars = vec![Var::U1, Var::X1, Var::U2, Var::X2, Var::Y1, Var::Y2, Var::Y3];
    let sizes = vec![nu1, ch.x1, nu2, ch.x2, ch.y1, ch.y2, ch.y3];
    let mut p = Vec::with_capacity(sizes.iter().product());
    for a in p_in {
        if a.len() != ch.x1 {
            return validation("input pmf: X1 dimension mismatch");
        }
        for (x1, b) in a.iter().enumerate() {
            if b.len() != nu2 {
                return validation("input pmf: U2 dimension mismatch");
            }
            for c in b {
                if c.len() != ch.x2 {
                    return validation("input pmf: X2 dimension mismatch");
                }
                for (x2, &base) in c.iter().enumerate() {
                    for y1 in 0..ch.y1 {
                        for y2 in 0..ch.y2 {
                            for y3 in 0..ch.y3 {
                                p.push(base * ch.p1[y1][x1] * ch.p2[y2][x1][x2] * ch.p3[y3][x2]);
                            }
                        }
                    }
                }
            }
        }
    }
    Joint::new(vars, sizes, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn bsc(e: f64) -> Vec<Vec<f64>> {
        vec![vec![1.0 - e, e], vec![e, 1.0 - e]]
    }

    fn binary_channel(e1: f64) -> DmBicChannel {
        DmBicChannel {
            x1: 2,
            x2: 2,
            y1: 2,
            y2: 2,
            y3: 2,
            p1: bsc(e1),
            p2: vec![vec![vec![0.5; 2]; 2]; 2],
            p3: bsc(0.5),
        }
    }

    #[test]
    fn independent_bits_zero_info() {
        let j = Joint::new(vec![Var::X1, Var::X2], vec![2, 2], vec![0.25; 4]).unwrap();
        assert_abs_diff_eq!(mutual_info(&j, &[Var::X1], &[Var::X2], &[]), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn copy_is_one_bit() {
        let j = Joint::new(vec![Var::X1, Var::Y1], vec![2, 2], vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_abs_diff_eq!(mutual_info(&j, &[Var::X1], &[Var::Y1], &[]), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn bsc_capacity() {
        let ch = binary_channel(0.11);
        let inp = SimpleInput {
            p_u1: vec![1.0],
            p_x1: vec![vec![0.5], vec![0.5]],
            p_u2: vec![1.0],
            p_x2: vec![vec![0.5], vec![0.5]],
        };
        let j = joint_from_simple(&ch, &inp).unwrap();
        let h2 = -(0.11f64 * 0.11f64.log2() + 0.89 * 0.89f64.log2());
        let i = mutual_info(&j, &[Var::X1], &[Var::Y1], &[]);
        assert_abs_diff_eq!(i, 1.0 - h2, epsilon = 1e-12);
        assert_abs_diff_eq!(i, 0.500, epsilon = 1e-3);
    }

    #[test]
    fn noiseless_copy_law() {
        let ch = binary_channel(0.0);
        let inp = SimpleInput {
            p_u1: vec![0.5, 0.5],
            p_x1: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            p_u2: vec![1.0],
            p_x2: vec![vec![1.0], vec![0.0]],
        };
        let j = joint_from_simple(&ch, &inp).unwrap();
        let m = j.marginal(VarSet::of(&[Var::X1, Var::Y1]));
        assert_eq!(m, vec![0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn single_atom() {
        let ch = DmBicChannel {
            x1: 1,
            x2: 1,
            y1: 1,
            y2: 1,
            y3: 1,
            p1: vec![vec![1.0]],
            p2: vec![vec![vec![1.0]]],
            p3: vec![vec![1.0]],
        };
        let inp = FactoredInput {
            q: 1,
            u1: 1,
            v1: 1,
            v2: 1,
            u2: 1,
            p_q: vec![1.0],
            p_u1: vec![vec![1.0]],
            p_v1v2: vec![vec![vec![vec![1.0]]]],
            p_u2: vec![vec![1.0]],
            p_x2: vec![vec![vec![1.0]]],
            f: vec![vec![vec![0]]],
        };
        let j = joint_from_factored(&ch, &inp).unwrap();
        assert_eq!(j.probs(), &[1.0]);
    }

    #[test]
    fn bad_f_rejected() {
        let ch = binary_channel(0.1);
        let inp = FactoredInput {
            q: 1,
            u1: 1,
            v1: 1,
            v2: 1,
            u2: 1,
            p_q: vec![1.0],
            p_u1: vec![vec![1.0]],
            p_v1v2: vec![vec![vec![vec![1.0]]]],
            p_u2: vec![vec![1.0]],
            p_x2: vec![vec![vec![0.5]], vec![vec![0.5]]],
            f: vec![vec![vec![2]]],
        };
        assert!(joint_from_factored(&ch, &inp).is_err());
    }
}
