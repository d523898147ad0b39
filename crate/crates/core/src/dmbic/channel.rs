use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};

const NORM_TOL: f64 = 1e-9;

/// Channel law `p(y1|x1) p(y2|x1,x2) p(y3|x2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DmBicChannel {
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
    pub y3: usize,
    /// `p1[y1][x1]`
    pub p1: Vec<Vec<f64>>,
    /// `p2[y2][x1][x2]`
    pub p2: Vec<Vec<Vec<f64>>>,
    /// `p3[y3][x2]`
    pub p3: Vec<Vec<f64>>,
}

/// Full input law with time sharing: `p(q) p(u1|q) p(v1,v2|u1,q) p(u2|q) p(x2|u2,q)`
/// and `x1 = f(u1, v1, v2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactoredInput {
    pub q: usize,
    pub u1: usize,
    pub v1: usize,
    pub v2: usize,
    pub u2: usize,
    pub p_q: Vec<f64>,
    /// `p_u1[u1][q]`
    pub p_u1: Vec<Vec<f64>>,
    /// `p_v1v2[v1][v2][u1][q]`
    pub p_v1v2: Vec<Vec<Vec<Vec<f64>>>>,
    /// `p_u2[u2][q]`
    pub p_u2: Vec<Vec<f64>>,
    /// `p_x2[x2][u2][q]`
    pub p_x2: Vec<Vec<Vec<f64>>>,
    /// `f[u1][v1][v2]`
    pub f: Vec<Vec<Vec<usize>>>,
}

/// Reduced law `p(u1) p(x1|u1) p(u2) p(x2|u2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleInput {
    pub p_u1: Vec<f64>,
    /// `p_x1[x1][u1]`
    pub p_x1: Vec<Vec<f64>>,
    pub p_u2: Vec<f64>,
    /// `p_x2[x2][u2]`
    pub p_x2: Vec<Vec<f64>>,
}

/// Input file contents: either law, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputLaw {
    Factored(FactoredInput),
    Simple(SimpleInput),
}

fn check_prob(v: f64, what: &str) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return validation(format!("{what}: entry {v} is not a probability"));
    }
    Ok(())
}

fn check_sum(s: f64, what: &str) -> Result<()> {
    if (s - 1.0).abs() > NORM_TOL {
        return validation(format!("{what}: slice sums to {s}, expected 1"));
    }
    Ok(())
}

fn shape<T>(v: &[T], n: usize, what: &str) -> Result<()> {
    if v.len() != n {
        return validation(format!("{what}: expected length {n}, got {}", v.len()));
    }
    Ok(())
}

/// Column-stochastic check for `t[out][in]`.
fn check_cond2(t: &[Vec<f64>], n_out: usize, n_in: usize, what: &str) -> Result<()> {
    shape(t, n_out, what)?;
    for row in t {
        shape(row, n_in, what)?;
        for &v in row {
            check_prob(v, what)?;
        }
    }
    for i in 0..n_in {
        check_sum(t.iter().map(|r| r[i]).sum(), what)?;
    }
    Ok(())
}

fn check_dist(p: &[f64], n: usize, what: &str) -> Result<()> {
    shape(p, n, what)?;
    for &v in p {
        check_prob(v, what)?;
    }
    check_sum(p.iter().sum(), what)
}

impl DmBicChannel {
    pub fn validate(&self) -> Result<()> {
        if [self.x1, self.x2, self.y1, self.y2, self.y3].contains(&0) {
            return validation("channel: alphabet sizes must be positive");
        }
        check_cond2(&self.p1, self.y1, self.x1, "p1")?;
        check_cond2(&self.p3, self.y3, self.x2, "p3")?;
        shape(&self.p2, self.y2, "p2")?;
        for plane in &self.p2 {
            shape(plane, self.x1, "p2")?;
            for row in plane {
                shape(row, self.x2, "p2")?;
                for &v in row {
                    check_prob(v, "p2")?;
                }
            }
        }
        for a in 0..self.x1 {
            for b in 0..self.x2 {
                check_sum(self.p2.iter().map(|pl| pl[a][b]).sum(), "p2")?;
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let ch: DmBicChannel = serde_json::from_str(text)?;
        ch.validate()?;
        Ok(ch)
    }
}

impl FactoredInput {
    pub fn validate(&self, ch: &DmBicChannel) -> Result<()> {
        if [self.q, self.u1, self.v1, self.v2, self.u2].contains(&0) {
            return validation("input: alphabet sizes must be positive");
        }
        check_dist(&self.p_q, self.q, "p_q")?;
        check_cond2(&self.p_u1, self.u1, self.q, "p_u1")?;
        check_cond2(&self.p_u2, self.u2, self.q, "p_u2")?;
        shape(&self.p_v1v2, self.v1, "p_v1v2")?;
        for a in &self.p_v1v2 {
            shape(a, self.v2, "p_v1v2")?;
            for b in a {
                shape(b, self.u1, "p_v1v2")?;
                for c in b {
                    shape(c, self.q, "p_v1v2")?;
                    for &v in c {
                        check_prob(v, "p_v1v2")?;
                    }
                }
            }
        }
        for u in 0..self.u1 {
            for q in 0..self.q {
                let s: f64 = self.p_v1v2.iter().flatten().map(|t| t[u][q]).sum();
                check_sum(s, "p_v1v2")?;
            }
        }
        shape(&self.p_x2, ch.x2, "p_x2")?;
        for a in &self.p_x2 {
            shape(a, self.u2, "p_x2")?;
            for b in a {
                shape(b, self.q, "p_x2")?;
                for &v in b {
                    check_prob(v, "p_x2")?;
                }
            }
        }
        for u in 0..self.u2 {
            for q in 0..self.q {
                check_sum(self.p_x2.iter().map(|t| t[u][q]).sum(), "p_x2")?;
            }
        }
        shape(&self.f, self.u1, "f")?;
        for a in &self.f {
            shape(a, self.v1, "f")?;
            for b in a {
                shape(b, self.v2, "f")?;
                if let Some(&x) = b.iter().find(|&&x| x >= ch.x1) {
                    return validation(format!("f: value {x} outside the X1 alphabet"));
                }
            }
        }
        Ok(())
    }
}

impl SimpleInput {
    pub fn validate(&self, ch: &DmBicChannel) -> Result<()> {
        if self.p_u1.is_empty() || self.p_u2.is_empty() {
            return validation("input: alphabet sizes must be positive");
        }
        check_dist(&self.p_u1, self.p_u1.len(), "p_u1")?;
        check_dist(&self.p_u2, self.p_u2.len(), "p_u2")?;
        check_cond2(&self.p_x1, ch.x1, self.p_u1.len(), "p_x1")?;
        check_cond2(&self.p_x2, ch.x2, self.p_u2.len(), "p_x2")?;
        Ok(())
    }

    pub fn u1(&self) -> usize {
        self.p_u1.len()
    }

    pub fn u2(&self) -> usize {
        self.p_u2.len()
    }

    /// Marginal law of X1.
    pub fn x1_marginal(&self) -> Vec<f64> {
        self.p_x1
            .iter()
            .map(|row| row.iter().zip(&self.p_u1).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Marginal law of X2.
    pub fn x2_marginal(&self) -> Vec<f64> {
        self.p_x2
            .iter()
            .map(|row| row.iter().zip(&self.p_u2).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl InputLaw {
    pub fn validate(&self, ch: &DmBicChannel) -> Result<()> {
        match self {
            InputLaw::Factored(f) => f.validate(ch),
            InputLaw::Simple(s) => s.validate(ch),
        }
    }

    pub fn from_json(text: &str, ch: &DmBicChannel) -> Result<Self> {
        let law: InputLaw = serde_json::from_str(text)?;
        law.validate(ch)?;
        Ok(law)
    }
}
