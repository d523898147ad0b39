use super::channel::{DmBicChannel, FactoredInput, InputLaw};
use super::joint::{joint_from_factored, Joint, Var};
use super::region::{binning_terms, eval_dm_region, eval_rows, mi, sym_row, MiTerm, RegionKind, SymRow};
use crate::error::Result;
use crate::oracle::{mc_region_equal, McReport};
use crate::polyhedra::{
    fme_eliminate_all, implies, rat, rat_f64, remove_redundant, LinSystem, Rat, Sense,
};

/// Split-rate variables, in column order. `R1b`/`R2b` are the binning rates.
pub const SPLIT_VARS: [&str; 8] = ["R1c", "R1p", "R2c", "R2p", "R1b", "R2b", "T3", "S3"];
const ALL_VARS: [&str; 11] = ["R1c", "R1p", "R2c", "R2p", "R1b", "R2b", "T3", "S3", "R1", "R2", "R3"];

/// Outcome when the binning constraint fails at the given law.
#[derive(Clone, Debug)]
pub struct Fallback {
    /// Same law with `V1 = V2 = U1`.
    pub replacement: FactoredInput,
    pub replacement_margin: f64,
    pub replacement_region: LinSystem,
    /// Outer region the evaluated system falls into.
    pub outer: LinSystem,
    pub inside_outer: bool,
}

#[derive(Clone, Debug)]
pub struct DeriveReport {
    pub binning_margin: f64,
    pub raw: LinSystem,
    pub lemma1: LinSystem,
    /// Projection after redundancy removal (absent on fallback).
    pub projected: Option<LinSystem>,
    pub mc: Option<McReport>,
    /// Two-way exact implication between projection and the closed form.
    pub exact_equal: Option<bool>,
    pub fallback: Option<Fallback>,
}

impl DeriveReport {
    pub fn matches(&self) -> bool {
        match (&self.mc, self.exact_equal) {
            (Some(mc), Some(eq)) => mc.subset_ab && mc.subset_ba && eq,
            _ => false,
        }
    }
}

fn value(t: &MiTerm, j: &Joint) -> Result<Rat> {
    rat_f64(t.value(j, true))
}

/// Decoding, covering and splitting constraints over split rates and `(R1,R2,R3)`.
pub fn raw_system(j: &Joint) -> Result<LinSystem> {
    use Var::*;
    let a = value(&mi(&[V1], &[Y1], &[U1, Q]), j)?;
    let b = value(&mi(&[V1], &[Y1], &[Q]), j)?;
    let c = value(&mi(&[V2], &[Y2], &[U1, U2, Q]), j)?;
    let d = value(&mi(&[V2, U2], &[Y2], &[U1, Q]), j)?;
    let e = value(&mi(&[V2], &[Y2], &[U2, Q]), j)?;
    let g = value(&mi(&[V2, U2], &[Y2], &[Q]), j)?;
    let h = value(&mi(&[X2], &[Y3], &[U2, Q]), j)?;
    let k = value(&mi(&[X2], &[Y3], &[Q]), j)?;
    let m = value(&mi(&[V1], &[V2], &[U1, Q]), j)?;

    let mut s = LinSystem::new(&ALL_VARS)?.all_nonneg();
    let one = |v: &[&'static str]| -> Vec<(&'static str, Rat)> { v.iter().map(|n| (*n, rat(1))).collect() };
    s.add(&one(&["R1p", "R1b"]), Sense::Le, a)?;
    s.add(&one(&["R1c", "R2c", "R1p", "R1b"]), Sense::Le, b)?;
    s.add(&one(&["R2p", "R2b"]), Sense::Le, c)?;
    s.add(&one(&["R2p", "R2b", "T3"]), Sense::Le, d)?;
    s.add(&one(&["R1c", "R2c", "R2p", "R2b"]), Sense::Le, e)?;
    s.add(&one(&["R1c", "R2c", "R2p", "R2b", "T3"]), Sense::Le, g)?;
    s.add(&one(&["S3"]), Sense::Le, h)?;
    s.add(&one(&["T3", "S3"]), Sense::Le, k)?;
    s.add(&one(&["R1b", "R2b"]), Sense::Ge, m)?;
    for (total, parts) in [("R1", ["R1c", "R1p"]), ("R2", ["R2c", "R2p"]), ("R3", ["T3", "S3"])] {
        let terms = vec![(total, rat(1)), (parts[0], rat(-1)), (parts[1], rat(-1))];
        s.add(&terms, Sense::Le, rat(0))?;
        s.add(&terms, Sense::Ge, rat(0))?;
    }
    Ok(s)
}

fn outer_rows() -> Vec<SymRow> {
    use Var::*;
    vec![
        sym_row([0, 0, 1], vec![mi(&[X2], &[Y3], &[Q])]),
        sym_row([0, 0, 1], vec![mi(&[U2], &[Y2], &[U1, Q]), mi(&[X2], &[Y3], &[U2, Q])]),
        sym_row([1, 1, 0], vec![mi(&[U1], &[Y1], &[Q])]),
        sym_row([1, 1, 0], vec![mi(&[U1], &[Y2], &[U2, Q])]),
        sym_row([1, 1, 1], vec![mi(&[U1, U2], &[Y2], &[Q]), mi(&[X2], &[Y3], &[U2, Q])]),
    ]
}

/// `V1 = V2 = U1`, everything else unchanged. The auxiliary alphabets take the
/// size of U1's and the map reads its V arguments modulo their old sizes.
pub fn replacement_law(inp: &FactoredInput) -> FactoredInput {
    let n = inp.u1;
    let mut p = vec![vec![vec![vec![0.0; inp.q]; n]; n]; n];
    for u in 0..n {
        for q in 0..inp.q {
            p[u][u][u][q] = 1.0;
        }
    }
    let f = (0..n)
        .map(|u| {
            (0..n)
                .map(|a| (0..n).map(|b| inp.f[u][a % inp.v1][b % inp.v2]).collect())
                .collect()
        })
        .collect();
    FactoredInput {
        v1: n,
        v2: n,
        p_v1v2: p,
        f,
        ..inp.clone()
    }
}

/// Projects the raw split-rate system onto `(R1,R2,R3)` and compares it with the
/// closed-form region, by sampling and by exact two-way implication.
pub fn derive_theorem1(ch: &DmBicChannel, inp: &FactoredInput, samples: usize, seed: u64) -> Result<DeriveReport> {
    let joint = joint_from_factored(ch, inp)?;
    let binning_margin = sym_row([0, 0, 0], binning_terms()).rhs_value(&joint, true);
    let raw = raw_system(&joint)?;
    let lemma1 = eval_dm_region(RegionKind::Lem1, ch, &InputLaw::Factored(inp.clone()))?.system;

    if binning_margin < -1e-12 {
        let replacement = replacement_law(inp);
        let rj = joint_from_factored(ch, &replacement)?;
        let replacement_margin = sym_row([0, 0, 0], binning_terms()).rhs_value(&rj, true);
        let replacement_region = eval_rows(&RegionKind::Lem1.rows(), &rj, true)?;
        let outer = eval_rows(&outer_rows(), &joint, true)?;
        let inside_outer = implies(&lemma1, &outer)?;
        return Ok(DeriveReport {
            binning_margin,
            raw,
            lemma1,
            projected: None,
            mc: None,
            exact_equal: None,
            fallback: Some(Fallback {
                replacement,
                replacement_margin,
                replacement_region,
                outer,
                inside_outer,
            }),
        });
    }

    let projected = fme_eliminate_all(&raw, &SPLIT_VARS)?;
    let projected = remove_redundant(&projected)?;
    let mc = mc_region_equal(&projected, &lemma1, samples, 1e-9, seed)?;
    let exact_equal = implies(&projected, &lemma1)? && implies(&lemma1, &projected)?;
    Ok(DeriveReport {
        binning_margin,
        raw,
        lemma1,
        projected: Some(projected),
        mc: Some(mc),
        exact_equal: Some(exact_equal),
        fallback: None,
    })
}
