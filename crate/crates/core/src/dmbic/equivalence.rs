use rayon::prelude::*;

use super::channel::{DmBicChannel, SimpleInput};
use super::dexp::{dexp_formula, DexpKind};
use super::dominating::{derive_dominating_input, Construction};
use crate::error::{validation, Result};
use crate::polyhedra::{dominates, hull_dominates, RatePoint};

/// One extreme point of the unreduced region and how it was covered.
#[derive(Clone, Debug)]
pub struct EquivalenceItem {
    pub input: usize,
    pub label: char,
    pub point: RatePoint,
    pub dominated: bool,
    /// Covering point, either a single candidate or a convex mixture.
    pub witness: Option<RatePoint>,
    /// `law:label` of the single covering candidate, or `hull`.
    pub source: Option<String>,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub which: u8,
    pub items: Vec<EquivalenceItem>,
}

impl EquivalenceReport {
    pub fn failures(&self) -> usize {
        self.items.iter().filter(|i| !i.dominated).count()
    }
}

/// Checks that every extreme point of the unreduced region at each input is
/// covered by the reduced-region extreme points over that input and its four
/// dominating substitutions.
pub fn verify_equivalence(
    which: u8,
    ch: &DmBicChannel,
    inputs: &[SimpleInput],
    tol: f64,
) -> Result<EquivalenceReport> {
    let (full, reduced) = match which {
        1 => (DexpKind::L5, DexpKind::L6),
        2 => (DexpKind::L3, DexpKind::L4),
        _ => return validation(format!("equivalence index must be 1 or 2, got {which}")),
    };
    ch.validate()?;
    let per_input: Vec<Result<Vec<EquivalenceItem>>> = inputs
        .par_iter()
        .enumerate()
        .map(|(n, inp)| {
            let omega = dexp_formula(full, ch, inp)?;
            let mut cands: Vec<(String, RatePoint)> = dexp_formula(reduced, ch, inp)?
                .into_iter()
                .map(|p| (format!("P:{}", p.label), p.point))
                .collect();
            for c in Construction::ALL {
                let alt = derive_dominating_input(c, inp);
                for p in dexp_formula(reduced, ch, &alt)? {
                    cands.push((format!("{c}:{}", p.label), p.point));
                }
            }
            let mut items = Vec::new();
            for lp in omega {
                let single = cands.iter().find(|(_, q)| dominates(q, &lp.point, tol));
                let (witness, source) = match single {
                    Some((name, q)) => (Some(q.clone()), Some(name.clone())),
                    None => {
                        let pts: Vec<RatePoint> = cands.iter().map(|(_, q)| q.clone()).collect();
                        let h = hull_dominates(&pts, &lp.point, tol)?;
                        let src = h.as_ref().map(|_| "hull".to_string());
                        (h, src)
                    }
                };
                items.push(EquivalenceItem {
                    input: n,
                    label: lp.label,
                    point: lp.point,
                    dominated: witness.is_some(),
                    witness,
                    source,
                });
            }
            Ok(items)
        })
        .collect();
    let mut items = Vec::new();
    for r in per_input {
        items.extend(r?);
    }
    Ok(EquivalenceReport { which, items })
}
