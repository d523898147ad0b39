use std::fmt;
use std::str::FromStr;

use super::channel::{DmBicChannel, InputLaw, SimpleInput};
use super::joint::{joint_from_factored, joint_from_simple, mi_sets, Joint, Var, VarSet};
use crate::error::{validation, Error, Result};
use crate::polyhedra::{rat, rat_f64, Inequality, LinSystem, Rat, Sense};

pub const RATE_VARS: [&str; 3] = ["R1", "R2", "R3"];

/// Signed mutual-information atom `coef * I(A;B|C)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MiTerm {
    pub a: VarSet,
    pub b: VarSet,
    pub c: VarSet,
    pub coef: i64,
}

pub fn mi(a: &[Var], b: &[Var], c: &[Var]) -> MiTerm {
    MiTerm {
        a: VarSet::of(a),
        b: VarSet::of(b),
        c: VarSet::of(c),
        coef: 1,
    }
}

impl MiTerm {
    pub fn neg(mut self) -> MiTerm {
        self.coef = -self.coef;
        self
    }

    /// `I(A;B|C) = I(A\C;B\C|C)` and symmetry, so equal terms compare equal.
    fn canonical(mut self) -> MiTerm {
        self.a = self.a.minus(self.c);
        self.b = self.b.minus(self.c);
        if self.b < self.a {
            std::mem::swap(&mut self.a, &mut self.b);
        }
        self
    }

    /// Numeric value (without the sign). With `superposed`, V1 and V2 carry U1 along.
    pub fn value(&self, joint: &Joint, superposed: bool) -> f64 {
        let ex = |s: VarSet| {
            if superposed && (s.contains(Var::V1) || s.contains(Var::V2)) {
                s.union(VarSet::of(&[Var::U1]))
            } else {
                s
            }
        };
        mi_sets(joint, ex(self.a), ex(self.b), ex(self.c))
    }
}

impl fmt::Display for MiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            write!(f, "I({};{})", self.a, self.b)
        } else {
            write!(f, "I({};{}|{})", self.a, self.b, self.c)
        }
    }
}

/// `coeffs . (R1,R2,R3) <= sum of atoms`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymRow {
    pub coeffs: [i64; 3],
    pub atoms: Vec<MiTerm>,
}

pub fn sym_row(coeffs: [i64; 3], atoms: Vec<MiTerm>) -> SymRow {
    SymRow { coeffs, atoms }
}

impl SymRow {
    /// Merges equal atoms and drops cancelled ones.
    pub fn canonical(&self) -> SymRow {
        let mut atoms: Vec<MiTerm> = Vec::new();
        for t in self.atoms.iter().cloned().map(MiTerm::canonical) {
            if t.a.is_empty() || t.b.is_empty() {
                continue;
            }
            match atoms
                .iter_mut()
                .find(|s| s.a == t.a && s.b == t.b && s.c == t.c)
            {
                Some(s) => s.coef += t.coef,
                None => atoms.push(t),
            }
        }
        atoms.retain(|t| t.coef != 0);
        atoms.sort();
        SymRow {
            coeffs: self.coeffs,
            atoms,
        }
    }

    pub fn rhs_value(&self, joint: &Joint, superposed: bool) -> f64 {
        self.atoms
            .iter()
            .map(|t| t.coef as f64 * t.value(joint, superposed))
            .sum()
    }

    /// Exact sum of the atoms' float values.
    fn rhs_exact(&self, joint: &Joint, superposed: bool) -> Result<Rat> {
        let mut s = rat(0);
        for t in &self.atoms {
            s += rat_f64(t.value(joint, superposed))? * rat(t.coef);
        }
        Ok(s)
    }
}

impl fmt::Display for SymRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lhs = Vec::new();
        for (c, v) in self.coeffs.iter().zip(RATE_VARS) {
            match c {
                0 => {}
                1 => lhs.push(v.to_string()),
                _ => lhs.push(format!("{c}*{v}")),
            }
        }
        write!(f, "{} <=", if lhs.is_empty() { "0".into() } else { lhs.join(" + ") })?;
        if self.atoms.is_empty() {
            return write!(f, " 0");
        }
        for (i, t) in self.atoms.iter().enumerate() {
            let mag = t.coef.abs();
            let body = if mag == 1 { t.to_string() } else { format!("{mag}*{t}") };
            match (t.coef < 0, i == 0) {
                (true, _) => write!(f, " - {body}")?,
                (false, true) => write!(f, " {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionKind {
    Thm1,
    Lem1,
    R1,
    R2,
    R1P,
    R2P,
    CapStrong,
    CapVstrong,
}

impl RegionKind {
    pub const ALL: [RegionKind; 8] = [
        RegionKind::Thm1,
        RegionKind::Lem1,
        RegionKind::R1,
        RegionKind::R2,
        RegionKind::R1P,
        RegionKind::R2P,
        RegionKind::CapStrong,
        RegionKind::CapVstrong,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegionKind::Thm1 => "THM1",
            RegionKind::Lem1 => "LEM1",
            RegionKind::R1 => "R1",
            RegionKind::R2 => "R2",
            RegionKind::R1P => "R1P",
            RegionKind::R2P => "R2P",
            RegionKind::CapStrong => "CAP_STRONG",
            RegionKind::CapVstrong => "CAP_VSTRONG",
        }
    }

    /// THM1 and LEM1 take the full factored law; the rest take the reduced one.
    pub fn needs_factored(self) -> bool {
        matches!(self, RegionKind::Thm1 | RegionKind::Lem1)
    }

    /// The defining inequality list, atoms unevaluated.
    pub fn rows(self) -> Vec<SymRow> {
        use Var::*;
        match self {
            RegionKind::Thm1 => thm1_rows(),
            RegionKind::Lem1 => {
                let mut r = thm1_rows();
                r.push(sym_row(
                    [0, 0, 1],
                    vec![mi(&[V2, U2], &[Y2], &[U1, Q]), mi(&[X2], &[Y3], &[U2, Q])],
                ));
                r.push(sym_row(
                    [0, 0, 1],
                    vec![
                        mi(&[V1], &[Y1], &[U1, Q]),
                        mi(&[V2, U2], &[Y2], &[U1, Q]),
                        mi(&[X2], &[Y3], &[U2, Q]),
                        mi(&[V1], &[V2], &[U1, Q]).neg(),
                    ],
                ));
                r
            }
            RegionKind::R1 => vec![
                sym_row([1, 0, 0], vec![mi(&[U1], &[Y1], &[])]),
                sym_row([0, 0, 1], vec![mi(&[X2], &[Y3], &[])]),
                sym_row([1, 1, 0], vec![mi(&[U1], &[Y1], &[]), mi(&[X1], &[Y2], &[U1, U2])]),
                sym_row(
                    [1, 1, 1],
                    vec![
                        mi(&[U1], &[Y1], &[]),
                        mi(&[X1, U2], &[Y2], &[U1]),
                        mi(&[X2], &[Y3], &[U2]),
                    ],
                ),
            ],
            RegionKind::R2 => vec![
                sym_row([0, 1, 0], vec![mi(&[U1], &[Y2], &[U2])]),
                sym_row([0, 0, 1], vec![mi(&[X2], &[Y3], &[])]),
                sym_row([1, 1, 0], vec![mi(&[X1], &[Y1], &[U1]), mi(&[U1], &[Y2], &[U2])]),
                sym_row([0, 1, 1], vec![mi(&[U1, U2], &[Y2], &[]), mi(&[X2], &[Y3], &[U2])]),
                sym_row(
                    [1, 1, 1],
                    vec![
                        mi(&[X1], &[Y1], &[U1]),
                        mi(&[U1, U2], &[Y2], &[]),
                        mi(&[X2], &[Y3], &[U2]),
                    ],
                ),
            ],
            RegionKind::R1P => vec![
                sym_row([1, 0, 0], vec![mi(&[U1], &[Y1], &[])]),
                sym_row([0, 1, 0], vec![mi(&[X1], &[Y2], &[U1, U2])]),
                sym_row([0, 0, 1], vec![mi(&[X2], &[Y3], &[])]),
                sym_row([0, 1, 1], vec![mi(&[X1, U2], &[Y2], &[U1]), mi(&[X2], &[Y3], &[U2])]),
            ],
            RegionKind::R2P => vec![
                sym_row([1, 0, 0], vec![mi(&[X1], &[Y1], &[U1])]),
                sym_row([0, 1, 0], vec![mi(&[U1], &[Y2], &[U2])]),
                sym_row([0, 0, 1], vec![mi(&[X2], &[Y3], &[])]),
                sym_row([0, 1, 1], vec![mi(&[U1, U2], &[Y2], &[]), mi(&[X2], &[Y3], &[U2])]),
            ],
            RegionKind::CapStrong => vec![
                sym_row([1, 0, 0], vec![mi(&[U1], &[Y1], &[])]),
                sym_row([0, 1, 0], vec![mi(&[X1], &[Y2], &[U1, X2])]),
                sym_row([0, 0, 1], vec![mi(&[X2], &[Y3], &[])]),
                sym_row([0, 1, 1], vec![mi(&[X1, X2], &[Y2], &[U1])]),
            ],
            RegionKind::CapVstrong => vec![
                sym_row([1, 0, 0], vec![mi(&[X1], &[Y1], &[U1])]),
                sym_row([0, 1, 0], vec![mi(&[U1], &[Y2], &[X2])]),
                sym_row([0, 0, 1], vec![mi(&[X2], &[Y3], &[])]),
            ],
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<RegionKind> {
        let up = s.to_ascii_uppercase();
        RegionKind::ALL
            .into_iter()
            .find(|k| k.name() == up)
            .ok_or_else(|| Error::Validation(format!("unknown region kind '{s}'")))
    }
}

fn thm1_rows() -> Vec<SymRow> {
    use Var::*;
    let m = || mi(&[V1], &[V2], &[U1, Q]).neg();
    vec![
        sym_row([1, 0, 0], vec![mi(&[V1], &[Y1], &[Q])]),
        sym_row([0, 1, 0], vec![mi(&[V2], &[Y2], &[U2, Q])]),
        sym_row([0, 0, 1], vec![mi(&[X2], &[Y3], &[Q])]),
        sym_row(
            [1, 1, 0],
            vec![mi(&[V1], &[Y1], &[U1, Q]), mi(&[V2], &[Y2], &[U2, Q]), m()],
        ),
        sym_row(
            [1, 1, 0],
            vec![mi(&[V1], &[Y1], &[Q]), mi(&[V2], &[Y2], &[U1, U2, Q]), m()],
        ),
        sym_row([0, 1, 1], vec![mi(&[V2, U2], &[Y2], &[Q]), mi(&[X2], &[Y3], &[U2, Q])]),
        sym_row(
            [1, 1, 1],
            vec![
                mi(&[V1], &[Y1], &[U1, Q]),
                mi(&[V2, U2], &[Y2], &[Q]),
                mi(&[X2], &[Y3], &[U2, Q]),
                m(),
            ],
        ),
        sym_row(
            [1, 1, 1],
            vec![
                mi(&[V1], &[Y1], &[Q]),
                mi(&[V2, U2], &[Y2], &[U1, Q]),
                mi(&[X2], &[Y3], &[U2, Q]),
                m(),
            ],
        ),
    ]
}

/// Left side of the binning feasibility constraint:
/// `I(V1;Y1|U1,Q) + I(V2;Y2|U1,U2,Q) - I(V1;V2|U1,Q)`.
pub fn binning_terms() -> Vec<MiTerm> {
    use Var::*;
    vec![
        mi(&[V1], &[Y1], &[U1, Q]),
        mi(&[V2], &[Y2], &[U1, U2, Q]),
        mi(&[V1], &[V2], &[U1, Q]).neg(),
    ]
}

/// Evaluates symbolic rows into a nonnegative system over `(R1,R2,R3)`.
pub fn eval_rows(rows: &[SymRow], joint: &Joint, superposed: bool) -> Result<LinSystem> {
    let mut sys = LinSystem::new(&RATE_VARS)?.all_nonneg();
    for r in rows {
        let coeffs = r.coeffs.iter().map(|&c| rat(c)).collect();
        sys.push(Inequality::new(coeffs, Sense::Le, r.rhs_exact(joint, superposed)?));
    }
    Ok(sys)
}

/// A region evaluated at one input law.
#[derive(Clone, Debug)]
pub struct DmRegion {
    pub kind: RegionKind,
    pub system: LinSystem,
    /// Binning feasibility margin; only reported for LEM1.
    pub binning_margin: Option<f64>,
    /// False when the binning constraint fails and the region is not achievable as evaluated.
    pub achievable_as_is: bool,
}

pub fn eval_dm_region(kind: RegionKind, ch: &DmBicChannel, inp: &InputLaw) -> Result<DmRegion> {
    match (kind.needs_factored(), inp) {
        (true, InputLaw::Factored(f)) => {
            let joint = joint_from_factored(ch, f)?;
            let system = eval_rows(&kind.rows(), &joint, true)?;
            let (binning_margin, ok) = if kind == RegionKind::Lem1 {
                let m = sym_row([0, 0, 0], binning_terms()).rhs_value(&joint, true);
                (Some(m), m >= -1e-12)
            } else {
                (None, true)
            };
            Ok(DmRegion {
                kind,
                system,
                binning_margin,
                achievable_as_is: ok,
            })
        }
        (false, InputLaw::Simple(s)) => Ok(DmRegion {
            kind,
            system: eval_simple_region(kind, ch, s)?,
            binning_margin: None,
            achievable_as_is: true,
        }),
        (true, _) => validation(format!("{kind} needs a factored input law")),
        (false, _) => validation(format!("{kind} needs a simple input law")),
    }
}

pub fn eval_simple_region(kind: RegionKind, ch: &DmBicChannel, inp: &SimpleInput) -> Result<LinSystem> {
    region_on_joint(kind, &joint_from_simple(ch, inp)?)
}

/// Evaluates one of the reduced-law regions on any joint carrying U1, X1, U2, X2 and the outputs.
pub fn region_on_joint(kind: RegionKind, joint: &Joint) -> Result<LinSystem> {
    if kind.needs_factored() {
        return validation(format!("{kind} needs a factored input law"));
    }
    eval_rows(&kind.rows(), joint, false)
}

/// Substitution used to specialise a symbolic region.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub constants: VarSet,
    pub rename: Vec<(Var, Var)>,
    /// Rate index forced to zero.
    pub face: Option<usize>,
}

fn rename_set(s: VarSet, map: &[(Var, Var)]) -> VarSet {
    let vars: Vec<Var> = s
        .iter()
        .map(|v| map.iter().find(|(f, _)| *f == v).map_or(v, |(_, t)| *t))
        .collect();
    VarSet::of(&vars)
}

/// Applies a reduction at the atom level: constants drop out of every slot,
/// an atom with an empty side vanishes, then renaming, face restriction,
/// cancellation and deduplication. Rows with no rate left are dropped.
pub fn reduce_rows(rows: &[SymRow], red: &Reduction) -> Vec<SymRow> {
    let mut out: Vec<SymRow> = Vec::new();
    for r in rows {
        let mut coeffs = r.coeffs;
        if let Some(k) = red.face {
            coeffs[k] = 0;
        }
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let atoms = r
            .atoms
            .iter()
            .map(|t| MiTerm {
                a: rename_set(t.a.minus(red.constants), &red.rename),
                b: rename_set(t.b.minus(red.constants), &red.rename),
                c: rename_set(t.c.minus(red.constants), &red.rename),
                coef: t.coef,
            })
            .collect();
        let row = SymRow { coeffs, atoms }.canonical();
        if !out.contains(&row) {
            out.push(row);
        }
    }
    out.sort();
    out
}

/// Broadcast-only specialisation: interferer and common layer silent, `R3 = 0`.
pub fn marton_reduction() -> Reduction {
    Reduction {
        constants: VarSet::of(&[Var::Q, Var::U1, Var::U2, Var::X2]),
        rename: Vec::new(),
        face: Some(2),
    }
}

/// Marton's private-message region.
pub fn marton_rows() -> Vec<SymRow> {
    use Var::*;
    let mut v = vec![
        sym_row([1, 0, 0], vec![mi(&[V1], &[Y1], &[])]),
        sym_row([0, 1, 0], vec![mi(&[V2], &[Y2], &[])]),
        sym_row(
            [1, 1, 0],
            vec![mi(&[V1], &[Y1], &[]), mi(&[V2], &[Y2], &[]), mi(&[V1], &[V2], &[]).neg()],
        ),
    ];
    v.iter_mut().for_each(|r| *r = r.canonical());
    v.sort();
    v
}

/// One-sided interference specialisation: receiver 1 silent, `X1 = V2`, `R1 = 0`.
pub fn hk_reduction() -> Reduction {
    Reduction {
        constants: VarSet::of(&[Var::U1, Var::V1]),
        rename: vec![(Var::V2, Var::X1)],
        face: Some(0),
    }
}

/// Compact Han-Kobayashi region for the one-sided interference channel.
pub fn hk_rows() -> Vec<SymRow> {
    use Var::*;
    let mut v = vec![
        sym_row([0, 1, 0], vec![mi(&[X1], &[Y2], &[U2, Q])]),
        sym_row([0, 0, 1], vec![mi(&[X2], &[Y3], &[Q])]),
        sym_row([0, 1, 1], vec![mi(&[X1, U2], &[Y2], &[Q]), mi(&[X2], &[Y3], &[U2, Q])]),
    ];
    v.iter_mut().for_each(|r| *r = r.canonical());
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dmbic::channel::FactoredInput;
    use crate::polyhedra::contains;

    #[test]
    fn marton_specialisation() {
        assert_eq!(reduce_rows(&RegionKind::Thm1.rows(), &marton_reduction()), marton_rows());
    }

    #[test]
    fn hk_specialisation() {
        assert_eq!(reduce_rows(&RegionKind::Thm1.rows(), &hk_reduction()), hk_rows());
    }

    #[test]
    fn display_row() {
        let r = &RegionKind::Thm1.rows()[3];
        assert_eq!(
            r.to_string(),
            "R1 + R2 <= I(V1;Y1|Q,U1) + I(V2;Y2|Q,U2) - I(V1;V2|Q,U1)"
        );
    }

    #[test]
    fn kind_names_round_trip() {
        for k in RegionKind::ALL {
            assert_eq!(k.name().parse::<RegionKind>().unwrap(), k);
        }
        assert!("R9".parse::<RegionKind>().is_err());
    }

    #[test]
    fn constant_inputs_give_origin() {
        let ch = DmBicChannel {
            x1: 2,
            x2: 2,
            y1: 2,
            y2: 2,
            y3: 2,
            p1: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            p2: vec![vec![vec![1.0, 0.0], vec![0.0, 0.0]], vec![vec![0.0, 1.0], vec![1.0, 1.0]]],
            p3: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
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
            p_x2: vec![vec![vec![1.0]], vec![vec![0.0]]],
            f: vec![vec![vec![0]]],
        };
        let r = eval_dm_region(RegionKind::Lem1, &ch, &InputLaw::Factored(inp)).unwrap();
        assert!(r.achievable_as_is);
        assert!(contains(&r.system, &[0.0, 0.0, 0.0], 0.0));
        assert!(!contains(&r.system, &[1e-6, 0.0, 0.0], 0.0));
        assert!(!contains(&r.system, &[0.0, 0.0, 1e-6], 0.0));
    }

    #[test]
    fn wrong_law_rejected() {
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
        let s = SimpleInput {
            p_u1: vec![1.0],
            p_x1: vec![vec![1.0]],
            p_u2: vec![1.0],
            p_x2: vec![vec![1.0]],
        };
        assert!(eval_dm_region(RegionKind::Thm1, &ch, &InputLaw::Simple(s.clone())).is_err());
        assert!(eval_dm_region(RegionKind::R2, &ch, &InputLaw::Simple(s)).is_ok());
    }
}
