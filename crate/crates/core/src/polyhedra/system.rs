use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{validation, Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// A rate assignment, one coordinate per system variable (same order), in bits.
pub type RatePoint = Vec<f64>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact conversion of a finite float (every finite f64 is a dyadic rational).
pub fn rat_f64(x: f64) -> Result<Rat> {
    Rat::from_float(x).ok_or_else(|| Error::Validation(format!("non-finite value {x}")))
}

pub(crate) fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
}

impl Sense {
    /// Multiplier turning the row into `<=` form.
    pub(crate) fn sign(self) -> i64 {
        match self {
            Sense::Le => 1,
            Sense::Ge => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
        }
    }
}

/// One row `coeffs . x (<=|>=) rhs`, dense over the owning system's variables.
#[derive(Clone, Debug)]
pub struct Inequality {
    pub coeffs: Vec<Rat>,
    pub sense: Sense,
    pub rhs: Rat,
    /// Ids of the original rows this one was combined from (Chernikov bookkeeping).
    pub(crate) history: Vec<u32>,
}

impl Inequality {
    pub fn new(coeffs: Vec<Rat>, sense: Sense, rhs: Rat) -> Self {
        Inequality { coeffs, sense, rhs, history: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn lhs_exact(&self, p: &[Rat]) -> Rat {
        self.coeffs.iter().zip(p).fold(Rat::zero(), |acc, (c, x)| acc + c * x)
    }

    pub fn holds_exact(&self, p: &[Rat]) -> bool {
        let lhs = self.lhs_exact(p);
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
        }
    }

    /// Row in `<=` form: `(a, b)` with `a . x <= b`.
    pub(crate) fn le_view(&self) -> (Vec<Rat>, Rat) {
        match self.sense {
            Sense::Le => (self.coeffs.clone(), self.rhs.clone()),
            Sense::Ge => (self.coeffs.iter().map(|c| -c).collect(), -&self.rhs),
        }
    }

    /// Positive rescaling so the first nonzero coefficient has magnitude one.
    pub(crate) fn normalize(&mut self) {
        let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) else {
            return;
        };
        if lead.is_one() {
            return;
        }
        for c in &mut self.coeffs {
            *c = &*c / &lead;
        }
        self.rhs = &self.rhs / &lead;
    }
}

/// A finite set of linear inequalities over named variables.
#[derive(Clone, Debug)]
pub struct LinSystem {
    vars: Vec<String>,
    ineqs: Vec<Inequality>,
    nonneg: Vec<bool>,
    nonneg_ids: Vec<u32>,
    pub(crate) eliminated: usize,
    next_id: u32,
}

impl LinSystem {
    pub fn new(vars: &[&str]) -> Result<Self> {
        Self::from_names(vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_names(vars: Vec<String>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || v.contains(char::is_whitespace) {
                return validation(format!("invalid variable name `{v}`"));
            }
            if vars[..i].contains(v) {
                return validation(format!("duplicate variable `{v}`"));
            }
        }
        let n = vars.len() as u32;
        Ok(LinSystem {
            nonneg: vec![false; vars.len()],
            nonneg_ids: (0..n).collect(),
            vars,
            ineqs: Vec::new(),
            eliminated: 0,
            next_id: n,
        })
    }

    /// Same system with every variable constrained to be nonnegative.
    pub fn all_nonneg(mut self) -> Self {
        self.nonneg.iter_mut().for_each(|f| *f = true);
        self
    }

    pub fn set_nonneg(&mut self, var: &str) -> Result<()> {
        let j = self.var_index(var)?;
        self.nonneg[j] = true;
        Ok(())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn ineqs(&self) -> &[Inequality] {
        &self.ineqs
    }

    pub fn is_nonneg(&self, j: usize) -> bool {
        self.nonneg[j]
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Adds `sum c_i v_i (sense) rhs`; repeated names accumulate.
    pub fn add(&mut self, terms: &[(&str, Rat)], sense: Sense, rhs: Rat) -> Result<()> {
        let mut coeffs = vec![Rat::zero(); self.dim()];
        for (name, c) in terms {
            let j = self.var_index(name)?;
            coeffs[j] += c;
        }
        self.push(Inequality::new(coeffs, sense, rhs));
        Ok(())
    }

    pub fn add_f64(&mut self, terms: &[(&str, f64)], sense: Sense, rhs: f64) -> Result<()> {
        let exact = terms
            .iter()
            .map(|(n, c)| Ok((*n, rat_f64(*c)?)))
            .collect::<Result<Vec<_>>>()?;
        self.add(&exact, sense, rat_f64(rhs)?)
    }

    pub fn add_int(&mut self, terms: &[(&str, i64)], sense: Sense, rhs: i64) -> Result<()> {
        let exact: Vec<_> = terms.iter().map(|(n, c)| (*n, rat(*c))).collect();
        self.add(&exact, sense, rat(rhs))
    }

    /// Appends a dense row, assigning it a fresh history id.
    pub fn push(&mut self, mut ineq: Inequality) {
        assert_eq!(ineq.coeffs.len(), self.dim(), "row width must match the system");
        ineq.history = vec![self.next_id];
        self.next_id += 1;
        self.ineqs.push(ineq);
    }

    /// Rows plus explicit `x >= 0` rows for the nonnegative-flagged variables.
    pub fn materialize(&self) -> Vec<Inequality> {
        let mut rows = self.ineqs.clone();
        for j in 0..self.dim() {
            if self.nonneg[j] {
                let mut coeffs = vec![Rat::zero(); self.dim()];
                coeffs[j] = Rat::one();
                let mut row = Inequality::new(coeffs, Sense::Ge, Rat::zero());
                row.history = vec![self.nonneg_ids[j]];
                rows.push(row);
            }
        }
        rows
    }

    pub(crate) fn nonneg_id(&self, j: usize) -> u32 {
        self.nonneg_ids[j]
    }

    /// A copy without variable `j`; the caller supplies rows already free of it.
    pub(crate) fn drop_var(&self, j: usize, rows: Vec<Inequality>) -> LinSystem {
        let mut vars = self.vars.clone();
        vars.remove(j);
        let mut nonneg = self.nonneg.clone();
        nonneg.remove(j);
        let mut nonneg_ids = self.nonneg_ids.clone();
        nonneg_ids.remove(j);
        let ineqs = rows
            .into_iter()
            .map(|mut r| {
                r.coeffs.remove(j);
                r
            })
            .collect();
        LinSystem {
            vars,
            ineqs,
            nonneg,
            nonneg_ids,
            eliminated: self.eliminated + 1,
            next_id: self.next_id,
        }
    }

    /// A copy with the given rows and nonnegativity flags, same variables.
    pub(crate) fn with_rows(&self, rows: Vec<Inequality>, nonneg: Vec<bool>) -> LinSystem {
        LinSystem { ineqs: rows, nonneg, ..self.clone() }
    }

    /// Float copy of the materialized rows, for fast repeated membership tests.
    pub fn float_view(&self) -> FloatSystem {
        FloatSystem {
            rows: self
                .materialize()
                .iter()
                .map(|r| (r.coeffs.iter().map(to_f64).collect(), r.sense, to_f64(&r.rhs)))
                .collect(),
            dim: self.dim(),
        }
    }

    pub fn contains_exact(&self, p: &[Rat]) -> bool {
        p.len() == self.dim() && self.materialize().iter().all(|r| r.holds_exact(p))
    }

    /// Reorders (and checks) variables to match `order`.
    pub fn reorder(&self, order: &[&str]) -> Result<LinSystem> {
        if order.len() != self.dim() {
            return validation("reorder needs a permutation of the variables");
        }
        let perm = order.iter().map(|n| self.var_index(n)).collect::<Result<Vec<_>>>()?;
        let mut out = self.clone();
        out.vars = perm.iter().map(|&j| self.vars[j].clone()).collect();
        out.nonneg = perm.iter().map(|&j| self.nonneg[j]).collect();
        out.nonneg_ids = perm.iter().map(|&j| self.nonneg_ids[j]).collect();
        for r in &mut out.ineqs {
            r.coeffs = perm.iter().map(|&j| r.coeffs[j].clone()).collect();
        }
        Ok(out)
    }
}

/// Float rows of a materialized system.
#[derive(Clone, Debug)]
pub struct FloatSystem {
    rows: Vec<(Vec<f64>, Sense, f64)>,
    dim: usize,
}

impl FloatSystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rows rewritten as `a . x <= b`.
    pub fn le_rows(&self) -> Vec<(Vec<f64>, f64)> {
        self.rows
            .iter()
            .map(|(a, sense, b)| match sense {
                Sense::Le => (a.clone(), *b),
                Sense::Ge => (a.iter().map(|c| -c).collect(), -b),
            })
            .collect()
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        if p.len() != self.dim {
            return false;
        }
        self.rows.iter().all(|(a, sense, b)| {
            let lhs: f64 = a.iter().zip(p).map(|(c, x)| c * x).sum();
            match sense {
                Sense::Le => lhs <= b + tol,
                Sense::Ge => lhs >= b - tol,
            }
        })
    }
}

/// True iff every inequality (including nonnegativity) holds within additive `tol`.
/// A point of the wrong dimension is never contained.
pub fn contains(sys: &LinSystem, p: &[f64], tol: f64) -> bool {
    sys.float_view().contains(p, tol)
}

impl fmt::Display for LinSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_system(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> LinSystem {
        let mut s = LinSystem::new(&["x", "y", "z"]).unwrap().all_nonneg();
        for v in ["x", "y", "z"] {
            s.add_int(&[(v, 1)], Sense::Le, 1).unwrap();
        }
        s
    }

    #[test]
    fn cube_membership() {
        let s = cube();
        assert!(contains(&s, &[0.5, 0.5, 0.5], 0.0));
        assert!(contains(&s, &[1.0 + 1e-12, 0.0, 0.0], 1e-9));
        assert!(!contains(&s, &[1.0 + 1e-6, 0.0, 0.0], 1e-9));
        assert!(!contains(&s, &[-0.1, 0.0, 0.0], 1e-9));
        assert!(!contains(&s, &[0.5, 0.5], 0.0));
    }

    #[test]
    fn unknown_variable_rejected() {
        let mut s = LinSystem::new(&["x"]).unwrap();
        assert!(matches!(
            s.add_int(&[("q", 1)], Sense::Le, 1),
            Err(Error::UnknownVariable(_))
        ));
        assert!(LinSystem::new(&["x", "x"]).is_err());
    }

    #[test]
    fn float_conversion_is_exact() {
        let r = rat_f64(0.1).unwrap();
        assert_eq!(to_f64(&r), 0.1);
        assert!(rat_f64(f64::NAN).is_err());
    }

    #[test]
    fn materialize_adds_nonneg_rows() {
        let s = cube();
        assert_eq!(s.materialize().len(), 6);
    }
}
