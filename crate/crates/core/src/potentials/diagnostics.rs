//! Injectivity and inverse-Hölder diagnostics on cylinder representatives.

use super::{value_at, Potential};
use crate::error::{Error, Result};
use crate::interval::{div_down, Interval};
use crate::symbolic::{primitive_period, sequence_distance, BiSequence, Sft, SymbolView};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// Depth used for distance enclosures between representatives.
const DISTANCE_DEPTH: usize = 200;

/// Below this the Hölder constant is flagged as a near collision.
pub const HOLDER_FLAG: f64 = 1e-6;

/// The periodic extension of every cyclically admissible `n`-word, placed
/// so the word occupies positions `−⌊n/2⌋ .. n−⌊n/2⌋`.
pub fn cylinder_representatives(sft: &Sft, n: usize) -> Vec<(Vec<u32>, BiSequence)> {
    let h = (n / 2) as i64;
    sft.words(n)
        .into_iter()
        .filter(|w| sft.is_cyclically_admissible(w).unwrap_or(false))
        .map(|w| {
            let x = BiSequence::periodic(w.clone()).shift(h);
            (w, x)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum InjectivityReport {
    Pass {
        cylinders: usize,
        min_gap: f64,
    },
    Collision {
        first: Vec<u32>,
        second: Vec<u32>,
        first_value: Interval,
        second_value: Interval,
    },
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        matches!(self, InjectivityReport::Pass { .. })
    }
}

fn evaluate(
    f: &dyn Potential,
    reps: &[(Vec<u32>, BiSequence)],
) -> Result<Vec<(Vec<u32>, BiSequence, Interval)>> {
    reps.par_iter()
        .map(|(w, x)| Ok((w.clone(), x.clone(), value_at(f, x, 0)?)))
        .collect()
}

/// Evaluate `f` at each `n`-cylinder representative and look for two
/// overlapping enclosures.
pub fn injectivity_check(f: &dyn Potential, sft: &Sft, n: usize) -> Result<InjectivityReport> {
    if n == 0 {
        return Err(Error::InvalidInput("cylinder depth must be positive".into()));
    }
    let mut vals = evaluate(f, &cylinder_representatives(sft, n))?;
    vals.sort_by(|a, b| a.2.cmp_lo(&b.2).then_with(|| a.0.cmp(&b.0)));
    let mut min_gap = f64::INFINITY;
    let mut widest = 0usize;
    for j in 1..vals.len() {
        let i = widest;
        if vals[j].2.lo() <= vals[i].2.hi() {
            return Ok(InjectivityReport::Collision {
                first: vals[i].0.clone(),
                second: vals[j].0.clone(),
                first_value: vals[i].2,
                second_value: vals[j].2,
            });
        }
        min_gap = min_gap.min(vals[j].2.gap(&vals[i].2));
        if vals[j].2.hi() > vals[i].2.hi() {
            widest = j;
        }
    }
    Ok(InjectivityReport::Pass {
        cylinders: vals.len(),
        min_gap,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolderReport {
    /// Certified lower bound of `|f(p) − f(q)| / d(p, q)^{k/(k−1)}`.
    pub c: f64,
    pub exponent: f64,
    pub pairs: usize,
    pub attained_by: (Vec<u32>, Vec<u32>),
    /// `c` below [`HOLDER_FLAG`].
    pub flagged: bool,
}

/// `min |f(p) − f(q)| / d(p, q)^{k/(k−1)}` over distinct representatives of
/// all cylinders of length at most `n`.
pub fn holder_inverse_constant(
    f: &dyn Potential,
    sft: &Sft,
    n: usize,
    k: u32,
) -> Result<HolderReport> {
    if k < 2 || n == 0 {
        return Err(Error::InvalidInput("need k > 1 and n ≥ 1".into()));
    }
    let exponent = k as f64 / (k as f64 - 1.0);
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for len in 1..=n {
        for (w, x) in cylinder_representatives(sft, len) {
            let p = primitive_period(&w) as i64;
            if seen.insert(x.window(0, p)) {
                reps.push((w, x));
            }
        }
    }
    let vals = evaluate(f, &reps)?;
    let m = vals.len();
    let best = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut local: Option<(f64, usize, usize)> = None;
            for j in i + 1..m {
                let gap = vals[i].2.gap(&vals[j].2);
                if gap <= 0.0 {
                    return Err((i, j));
                }
                let d = sequence_distance(&vals[i].1, &vals[j].1, DISTANCE_DEPTH).hi();
                let denom = d.powf(exponent).next_up().next_up();
                let c = div_down(gap, denom);
                if local.map_or(true, |(b, _, _)| c < b) {
                    local = Some((c, i, j));
                }
            }
            Ok(local)
        })
        .collect::<std::result::Result<Vec<_>, (usize, usize)>>();
    let best = match best {
        Err(_) => return Err(Error::ZeroGap),
        Ok(v) => v
            .into_iter()
            .flatten()
            .min_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2)))),
    };
    let (c, i, j) = best.ok_or_else(|| Error::InvalidInput("fewer than two cylinders".into()))?;
    Ok(HolderReport {
        c,
        exponent,
        pairs: m * (m - 1) / 2,
        attained_by: (vals[i].0.clone(), vals[j].0.clone()),
        flagged: c < HOLDER_FLAG,
    })
}
