use std::collections::HashMap;

use num::{Signed, Zero};

use super::system::{Inequality, LinSystem, Rat, Sense};
use crate::error::Result;

/// Projects out `var` by pairing every lower bound on it with every upper bound.
///
/// Rows keep their sense when both partners share it; mixed pairs come out in
/// `<=` form. Parallel duplicates keep the tighter bound, and Chernikov's rule
/// drops combinations built from more than `k + 1` original rows after `k`
/// eliminations.
pub fn fme_eliminate(sys: &LinSystem, var: &str) -> Result<LinSystem> {
    let j = sys.var_index(var)?;
    let rows = sys.materialize();

    let mut keep = Vec::new();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for r in rows {
        let a = &r.coeffs[j];
        if a.is_zero() {
            // materialized nonnegativity rows of other variables are recreated later
            if !is_nonneg_row(sys, &r) {
                keep.push(r);
            }
        } else if a.is_positive() == (r.sense == Sense::Le) {
            upper.push(r);
        } else {
            lower.push(r);
        }
    }

    let limit = sys.eliminated + 2;
    for u in &upper {
        for l in &lower {
            let mut hist: Vec<u32> = u.history.iter().chain(&l.history).copied().collect();
            hist.sort_unstable();
            hist.dedup();
            if hist.len() > limit {
                continue;
            }
            let mut row = combine(u, l, j);
            row.history = hist;
            keep.push(row);
        }
    }

    let rows = tidy(keep);
    Ok(sys.drop_var(j, rows))
}

/// Eliminates several variables, choosing the cheapest (fewest new pairs) first.
pub fn fme_eliminate_all(sys: &LinSystem, vars: &[&str]) -> Result<LinSystem> {
    let mut cur = sys.clone();
    let mut todo: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    for v in &todo {
        cur.var_index(v)?;
    }
    while !todo.is_empty() {
        let rows = cur.materialize();
        let cost = |name: &str| -> usize {
            let j = cur.var_index(name).expect("checked above");
            let (mut lo, mut up) = (0usize, 0usize);
            for r in &rows {
                let a = &r.coeffs[j];
                if a.is_zero() {
                    continue;
                }
                if a.is_positive() == (r.sense == Sense::Le) {
                    up += 1;
                } else {
                    lo += 1;
                }
            }
            lo * up
        };
        let (idx, _) = todo
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| cost(v))
            .expect("non-empty");
        let v = todo.remove(idx);
        cur = fme_eliminate(&cur, &v)?;
    }
    Ok(cur)
}

fn is_nonneg_row(sys: &LinSystem, r: &Inequality) -> bool {
    r.history.len() == 1
        && (0..sys.dim()).any(|k| sys.is_nonneg(k) && sys.nonneg_id(k) == r.history[0])
        && r.sense == Sense::Ge
        && r.rhs.is_zero()
}

/// Positive combination of an upper and a lower bound row that cancels column `j`.
fn combine(u: &Inequality, l: &Inequality, j: usize) -> Inequality {
    let su = Rat::from_integer(u.sense.sign().into());
    let sl = Rat::from_integer(l.sense.sign().into());
    // mu_u * s_u * a_u = 1 and mu_l * s_l * a_l = -1
    let mu_u = (&su * &u.coeffs[j]).recip();
    let mu_l = -(&sl * &l.coeffs[j]).recip();
    let wu = &mu_u * &su;
    let wl = &mu_l * &sl;
    let mut coeffs: Vec<Rat> = u
        .coeffs
        .iter()
        .zip(&l.coeffs)
        .map(|(a, b)| &wu * a + &wl * b)
        .collect();
    coeffs[j] = Rat::zero();
    let mut rhs = &wu * &u.rhs + &wl * &l.rhs;
    let mut sense = Sense::Le;
    if u.sense == Sense::Ge && l.sense == Sense::Ge {
        coeffs.iter_mut().for_each(|c| *c = -&*c);
        rhs = -rhs;
        sense = Sense::Ge;
    }
    let mut row = Inequality::new(coeffs, sense, rhs);
    row.normalize();
    row
}

/// Drops satisfied trivial rows and merges parallel duplicates (tighter wins).
pub(crate) fn tidy(rows: Vec<Inequality>) -> Vec<Inequality> {
    let mut out: Vec<Inequality> = Vec::new();
    let mut seen: HashMap<Vec<Rat>, usize> = HashMap::new();
    let mut infeasible_kept = false;
    for mut r in rows {
        if r.is_trivial() {
            let ok = match r.sense {
                Sense::Le => !r.rhs.is_negative(),
                Sense::Ge => !r.rhs.is_positive(),
            };
            if !ok && !infeasible_kept {
                infeasible_kept = true;
                out.push(r);
            }
            continue;
        }
        r.normalize();
        let (key, b) = r.le_view();
        match seen.get(&key) {
            Some(&k) => {
                let (_, bk) = out[k].le_view();
                if b < bk {
                    out[k] = r;
                }
            }
            None => {
                seen.insert(key, out.len());
                out.push(r);
            }
        }
    }
    out
}
