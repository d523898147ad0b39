use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{validation, Error, Result};
use crate::polyhedra::{maximize, rat, LinSystem, LpOutcome, RatePoint};

const CHUNK: usize = 1024;

#[derive(Clone, Debug)]
pub struct McReport {
    /// No sample was in A but outside B.
    pub subset_ab: bool,
    /// No sample was in B but outside A.
    pub subset_ba: bool,
    /// Lowest-index sample lying in exactly one region.
    pub witness: Option<RatePoint>,
    pub samples: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl McReport {
    pub fn equal(&self) -> bool {
        self.subset_ab && self.subset_ba
    }
}

/// Per-variable `[min, max]` over the union of the two regions.
fn sample_box(a: &LinSystem, b: &LinSystem) -> Result<(Vec<f64>, Vec<f64>)> {
    let d = a.dim();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for sys in [a, b] {
        let rows = sys.materialize();
        for j in 0..d {
            for s in [1, -1] {
                let mut c = vec![rat(0); d];
                c[j] = rat(s);
                match maximize(&c, &rows) {
                    LpOutcome::Optimal { value, .. } => {
                        let v = num::ToPrimitive::to_f64(&value).unwrap_or(f64::NAN) * s as f64;
                        if s == 1 {
                            hi[j] = hi[j].max(v);
                        } else {
                            lo[j] = lo[j].min(v);
                        }
                    }
                    LpOutcome::Unbounded => {
                        return Err(Error::Unbounded {
                            direction: format!("{}{}", if s == 1 { "+" } else { "-" }, sys.vars()[j]),
                        })
                    }
                    LpOutcome::Infeasible => break,
                }
            }
        }
    }
    if lo.iter().any(|v| !v.is_finite()) {
        // both regions empty
        lo = vec![0.0; d];
        hi = vec![1.0; d];
    }
    for j in 0..d {
        let pad = 0.1 * (hi[j] - lo[j]).max(1e-6);
        lo[j] -= pad;
        hi[j] += pad;
    }
    Ok((lo, hi))
}

/// Samples `n` points uniformly in a box covering both regions (10% margin) and
/// looks for points that lie in exactly one of them.
pub fn mc_region_equal(a: &LinSystem, b: &LinSystem, n: usize, tol: f64, seed: u64) -> Result<McReport> {
    if a.vars() != b.vars() {
        return validation("mc_region_equal needs identical variable lists");
    }
    let (lower, upper) = sample_box(a, b)?;
    let (fa, fb) = (a.float_view(), b.float_view());
    let chunks = n.div_ceil(CHUNK);
    let found: Vec<(bool, bool, Option<RatePoint>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (c as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let (mut ab, mut ba, mut w) = (true, true, None);
            for _ in 0..CHUNK.min(n - c * CHUNK) {
                let p: RatePoint = lower
                    .iter()
                    .zip(&upper)
                    .map(|(l, h)| rng.random_range(*l..=*h))
                    .collect();
                let (ia, ib) = (fa.contains(&p, tol), fb.contains(&p, tol));
                if ia != ib {
                    if ia {
                        ab = false;
                    } else {
                        ba = false;
                    }
                    if w.is_none() {
                        w = Some(p);
                    }
                }
            }
            (ab, ba, w)
        })
        .collect();
    let mut rep = McReport {
        subset_ab: true,
        subset_ba: true,
        witness: None,
        samples: n,
        lower,
        upper,
    };
    for (ab, ba, w) in found {
        rep.subset_ab &= ab;
        rep.subset_ba &= ba;
        if rep.witness.is_none() {
            rep.witness = w;
        }
    }
    Ok(rep)
}
