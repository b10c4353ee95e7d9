//! `f(a) = [a_0; a_1, …] + [0; a_{−1}, a_{−2}, …]` truncated to a window.

use super::Potential;
use crate::classical::QuadraticSurd;
use crate::error::{Error, Result};
use crate::interval::{div_down, div_up, Interval};
use num_bigint::BigInt;
use std::sync::Arc;

/// Depth beyond which refinement stops.
pub const MAX_GAUSS_DEPTH: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussPotential {
    depth: usize,
}

impl GaussPotential {
    pub fn new(depth: usize) -> Result<Self> {
        if depth == 0 || depth > MAX_GAUSS_DEPTH {
            return Err(Error::InvalidPotential(format!(
                "Gauss depth must lie in 1..={MAX_GAUSS_DEPTH}"
            )));
        }
        Ok(GaussPotential { depth })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }
}

fn rational_enclosure_u(p: u128, q: u128) -> Interval {
    const EXACT: u128 = 1 << 53;
    if p < EXACT && q < EXACT {
        Interval::new(div_down(p as f64, q as f64), div_up(p as f64, q as f64))
    } else {
        QuadraticSurd::rational(BigInt::from(p), BigInt::from(q)).enclosure()
    }
}

/// Enclosure of `[lead; terms…, T]` over all tails `T ∈ [1, ∞]`.
pub fn cf_enclosure(lead: u64, terms: impl IntoIterator<Item = u64>) -> Interval {
    let (mut p0, mut q0): (u128, u128) = (1, 0);
    let (mut p1, mut q1): (u128, u128) = (lead as u128, 1);
    let mut big: Option<(BigInt, BigInt, BigInt, BigInt)> = None;
    for a in terms {
        if let Some((bp0, bq0, bp1, bq1)) = big.as_mut() {
            let a = BigInt::from(a);
            let np = &a * &*bp1 + &*bp0;
            let nq = &a * &*bq1 + &*bq0;
            *bp0 = std::mem::replace(bp1, np);
            *bq0 = std::mem::replace(bq1, nq);
            continue;
        }
        let a = a as u128;
        let np = a.checked_mul(p1).and_then(|x| x.checked_add(p0));
        let nq = a.checked_mul(q1).and_then(|x| x.checked_add(q0));
        match (np, nq) {
            (Some(np), Some(nq)) => {
                p0 = std::mem::replace(&mut p1, np);
                q0 = std::mem::replace(&mut q1, nq);
            }
            _ => {
                let (bp0, bq0) = (BigInt::from(p0), BigInt::from(q0));
                let (bp1, bq1) = (BigInt::from(p1), BigInt::from(q1));
                let a = BigInt::from(a);
                let np = &a * &bp1 + &bp0;
                let nq = &a * &bq1 + &bq0;
                big = Some((bp1, bq1, np, nq));
            }
        }
    }
    let (e1, e2) = match big {
        None => (
            rational_enclosure_u(p1, q1),
            rational_enclosure_u(p1 + p0, q1 + q0),
        ),
        Some((bp0, bq0, bp1, bq1)) => (
            QuadraticSurd::rational(bp1.clone(), bq1.clone()).enclosure(),
            QuadraticSurd::rational(bp1 + bp0, bq1 + bq0).enclosure(),
        ),
    };
    e1.hull(&e2)
}

fn check_symbols(word: &[u32]) -> Result<()> {
    if word.contains(&0) {
        return Err(Error::InvalidInput(
            "Gauss potential needs partial quotients ≥ 1".into(),
        ));
    }
    Ok(())
}

fn enclose(word: &[u32], center: usize) -> Interval {
    let alpha = cf_enclosure(
        word[center] as u64,
        word[center + 1..].iter().map(|&a| a as u64),
    );
    let beta = cf_enclosure(0, word[..center].iter().rev().map(|&a| a as u64));
    alpha.add(&beta)
}

/// Enclosure of `α_0 + β_0` over every extension of a window of length
/// `2k+1` centred at `a_0`.
pub fn gauss_window(depth: usize, window: &[u32]) -> Result<Interval> {
    if window.len() != 2 * depth + 1 {
        return Err(Error::InvalidInput(format!(
            "Gauss window must have length {}",
            2 * depth + 1
        )));
    }
    check_symbols(window)?;
    Ok(enclose(window, depth))
}

impl Potential for GaussPotential {
    fn left_radius(&self) -> usize {
        self.depth
    }

    fn right_radius(&self) -> usize {
        self.depth
    }

    fn eval(&self, window: &[u32]) -> Result<Interval> {
        gauss_window(self.depth, window)
    }

    fn enclose_partial(&self, word: &[u32], center: usize) -> Option<Interval> {
        if center >= word.len() || word.contains(&0) {
            return None;
        }
        Some(enclose(word, center))
    }

    fn refined(&self, extra: usize) -> Option<Arc<dyn Potential>> {
        let d = (self.depth + extra).min(MAX_GAUSS_DEPTH);
        (d > self.depth).then(|| Arc::new(GaussPotential { depth: d }) as Arc<dyn Potential>)
    }
}
