//! Basic and extended cells around cool indices.

use super::records::happiness;
use super::ModelParams;
use crate::error::{Error, Result};
use crate::potentials::{AffineModelPotential, CantorEmbedding, Potential};
use crate::symbolic::{BiSequence, SymbolView};
use serde::Serialize;

/// Searches for mismatches and length crossings stop after this many
/// symbols.
const MAX_CELL: i64 = 1 << 16;

/// Cylinder geometry used for `|I^s|` and `|I^u|`: per-symbol contraction
/// ratios of the stable and unstable Cantor embeddings.
#[derive(Clone, Debug, PartialEq)]
pub struct CellModel {
    pub stable: CantorEmbedding,
    pub unstable: CantorEmbedding,
}

impl CellModel {
    pub fn new(stable: CantorEmbedding, unstable: CantorEmbedding) -> Self {
        CellModel { stable, unstable }
    }

    pub fn from_affine(f: &AffineModelPotential) -> Self {
        CellModel::new(f.stable().clone(), f.unstable().clone())
    }

    pub fn uniform(alphabet: &[u32], ratio: f64) -> Result<Self> {
        let e = CantorEmbedding::uniform(alphabet, ratio)?;
        Ok(CellModel::new(e.clone(), e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Basic cell `[−r, s]` around `k` and its extension `[−r̃, s̃]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellSpec {
    pub k: i64,
    pub side: Side,
    pub r: u64,
    pub s: u64,
    pub r_tilde: u64,
    pub s_tilde: u64,
}

/// `⌊(1 + 2/K)·n⌋`.
pub fn extend(n: u64, big_k: usize) -> u64 {
    let k = big_k as u64;
    n * (k + 2) / k
}

/// First `r ≥ 1` with `a_{k+sign·r} ≠ a_{sign·r}`.
fn first_mismatch(theta: &BiSequence, k: i64, sign: i64) -> Result<u64> {
    (1..=MAX_CELL)
        .find(|&r| theta.at(k + sign * r) != theta.at(sign * r))
        .map(|r| r as u64)
        .ok_or(Error::OutOfHorizon(k))
}

/// `ln` of the cylinder length of `(a_0, a_{k+sign}, …, a_{k+sign·n})`.
fn log_length(e: &CantorEmbedding, theta: &BiSequence, k: i64, sign: i64, n: u64) -> Result<f64> {
    let mut l = e.ratio(theta.at(0))?.ln();
    for j in 1..=n as i64 {
        l += e.ratio(theta.at(k + sign * j))?.ln();
    }
    Ok(l)
}

/// Least `n ≥ 1` whose cylinder on the `sign` side satisfies
/// `C·|I(n)| ≤ target`, in logarithms.
fn crossing(
    e: &CantorEmbedding,
    theta: &BiSequence,
    k: i64,
    sign: i64,
    log_c: f64,
    log_target: f64,
) -> Result<u64> {
    let mut l = e.ratio(theta.at(0))?.ln();
    for n in 1..=MAX_CELL {
        l += e.ratio(theta.at(k + sign * n))?.ln();
        if log_c + l <= log_target {
            return Ok(n as u64);
        }
    }
    Err(Error::OutOfHorizon(k))
}

/// Cell of `k` on the given happy side, without checking happiness.
pub fn basic_cell(
    theta: &BiSequence,
    k: i64,
    side: Side,
    params: &ModelParams,
    model: &CellModel,
) -> Result<CellSpec> {
    let log_c = params.record_factor().ln();
    let (r, s) = match side {
        Side::Left => {
            let r = first_mismatch(theta, k, -1)?;
            let target = log_length(&model.stable, theta, k, -1, r)?;
            (r, crossing(&model.unstable, theta, k, 1, log_c, target)?)
        }
        Side::Right => {
            let s = first_mismatch(theta, k, 1)?;
            let target = log_length(&model.unstable, theta, k, 1, s)?;
            (crossing(&model.stable, theta, k, -1, log_c, target)?, s)
        }
    };
    Ok(CellSpec {
        k,
        side,
        r,
        s,
        r_tilde: extend(r, params.k),
        s_tilde: extend(s, params.k),
    })
}

/// Cell of a happy index; the side is the one on which `k` is happy.
pub fn cells(
    theta: &BiSequence,
    k: i64,
    f: &dyn Potential,
    params: &ModelParams,
    model: &CellModel,
) -> Result<CellSpec> {
    let h = happiness(theta, k, f, params)?;
    let side = if h.left_happy.is_true() {
        Side::Left
    } else if h.right_happy.is_true() {
        Side::Right
    } else {
        return Err(Error::NotHappy(k));
    };
    basic_cell(theta, k, side, params, model)
}
