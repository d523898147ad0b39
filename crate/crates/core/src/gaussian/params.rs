use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};

/// Gaussian channel quadruple. Noise variances are 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct GbicParams {
    pub P1: f64,
    pub P2: f64,
    pub a: f64,
    pub b: f64,
}

#[allow(non_snake_case)]
impl GbicParams {
    pub fn new(P1: f64, P2: f64, a: f64, b: f64) -> Result<GbicParams> {
        let p = GbicParams { P1, P2, a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.P1.is_finite() && self.P1 > 0.0 && self.P2.is_finite() && self.P2 > 0.0) {
            return validation(format!("powers must be positive and finite, got P1={} P2={}", self.P1, self.P2));
        }
        if !(self.a.is_finite() && self.a >= 0.0 && self.b.is_finite() && self.b >= 0.0) {
            return validation(format!("gains must be finite and nonnegative, got a={} b={}", self.a, self.b));
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        regime_classify(self)
    }
}

/// Power split at the broadcast transmitter (`alpha`) and at the interferer (`gamma`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitParams {
    pub alpha: f64,
    pub gamma: f64,
}

impl SplitParams {
    pub fn new(alpha: f64, gamma: f64) -> Result<SplitParams> {
        unit("alpha", alpha)?;
        unit("gamma", gamma)?;
        Ok(SplitParams { alpha, gamma })
    }
}

pub(crate) fn unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return validation(format!("{name} must lie in [0,1], got {x}"));
    }
    Ok(())
}

/// Strength class of the broadcast link to receiver 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `a >= 1 + b P2`
    A,
    /// `1 < a < 1 + b P2`
    B,
    /// `a <= 1`
    C,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::A => "A",
            Regime::B => "B",
            Regime::C => "C",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Regime> {
        match s {
            "A" | "a" => Ok(Regime::A),
            "B" | "b" => Ok(Regime::B),
            "C" | "c" => Ok(Regime::C),
            _ => validation(format!("unknown regime `{s}`")),
        }
    }
}

/// `0.5 log2(1 + x)`.
pub fn c_of(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return validation(format!("c_of needs a nonnegative argument, got {x}"));
    }
    Ok(cap(x))
}

/// Unchecked `c_of` for arguments known to be nonnegative.
pub(crate) fn cap(x: f64) -> f64 {
    0.5 * (x.max(0.0)).ln_1p() / std::f64::consts::LN_2
}

/// Penalty term of the entropy-power outer bounds.
pub fn xi(x: f64, r3: f64) -> f64 {
    if x < 1.0 {
        cap(x * (4f64.powf(r3) - 1.0))
    } else {
        r3
    }
}

pub fn regime_classify(p: &GbicParams) -> Regime {
    if p.a >= 1.0 + p.b * p.P2 {
        Regime::A
    } else if p.a <= 1.0 {
        Regime::C
    } else {
        Regime::B
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn capacity_function() {
        assert_eq!(c_of(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(c_of(3.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c_of(24.0).unwrap(), 0.5 * 25f64.log2(), epsilon = 1e-15);
        assert!(c_of(-0.1).is_err());
    }

    #[test]
    fn xi_branches() {
        assert_eq!(xi(2.0, 0.5), 0.5);
        assert_eq!(xi(0.3, 0.0), 0.0);
        assert_eq!(xi(7.0, 0.0), 0.0);
        assert_abs_diff_eq!(xi(0.5, 1.0), 0.5 * 2.5f64.log2(), epsilon = 1e-15);
    }

    #[test]
    fn regimes() {
        let r = |a, b| GbicParams::new(6.0, 3.0, a, b).unwrap().regime();
        assert_eq!(r(4.0, 1.0), Regime::A);
        assert_eq!(r(2.0, 3.0), Regime::B);
        assert_eq!(r(1.0, 3.0), Regime::C);
        assert_eq!(GbicParams::new(10.0, 8.0, 0.4, 0.6).unwrap().regime(), Regime::C);
        assert!(GbicParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(GbicParams::new(1.0, 1.0, -1.0, 1.0).is_err());
    }
}
