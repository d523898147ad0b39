use std::fmt;
use std::str::FromStr;

use super::channel::SimpleInput;
use crate::error::{Error, Result};

/// Input substitutions used to dominate the extra extreme points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    /// U1 collapsed to a constant.
    U1Phi,
    /// U2 collapsed to a constant.
    U2Phi,
    /// Both collapsed.
    U1PhiU2Phi,
    /// `U1 = X1`, U2 collapsed.
    U1eqX1U2Phi,
}

impl Construction {
    pub const ALL: [Construction; 4] = [
        Construction::U1Phi,
        Construction::U2Phi,
        Construction::U1PhiU2Phi,
        Construction::U1eqX1U2Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::U1Phi => "U1phi",
            Construction::U2Phi => "U2phi",
            Construction::U1PhiU2Phi => "U1phiU2phi",
            Construction::U1eqX1U2Phi => "U1eqX1_U2phi",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Construction> {
        Construction::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Validation(format!("unknown construction '{s}'")))
    }
}

fn point_mass(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[0] = 1.0;
    v
}

/// Point mass on the first symbol; every column of `X|U` becomes the X marginal,
/// so the law of X is untouched.
fn collapse(p_u: &[f64], x_marg: Vec<f64>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let cols = p_u.len();
    let table = x_marg.iter().map(|&m| vec![m; cols]).collect();
    (point_mass(cols), table)
}

pub fn derive_dominating_input(c: Construction, inp: &SimpleInput) -> SimpleInput {
    let mut out = inp.clone();
    let u1phi = |o: &mut SimpleInput| {
        let (pu, px) = collapse(&o.p_u1, o.x1_marginal());
        o.p_u1 = pu;
        o.p_x1 = px;
    };
    let u2phi = |o: &mut SimpleInput| {
        let (pu, px) = collapse(&o.p_u2, o.x2_marginal());
        o.p_u2 = pu;
        o.p_x2 = px;
    };
    match c {
        Construction::U1Phi => u1phi(&mut out),
        Construction::U2Phi => u2phi(&mut out),
        Construction::U1PhiU2Phi => {
            u1phi(&mut out);
            u2phi(&mut out);
        }
        Construction::U1eqX1U2Phi => {
            let m = out.x1_marginal();
            let n = m.len();
            out.p_x1 = (0..n)
                .map(|x| (0..n).map(|u| if u == x { 1.0 } else { 0.0 }).collect())
                .collect();
            out.p_u1 = m;
            u2phi(&mut out);
        }
    }
    out
}
