//! The symbolic metric `d(a,b) = Σ 2^{-(2|n|+1)} δ_n(a,b)` and the bracket of
//! the local product structure.

use super::sequence::{BiSequence, Direction, SymbolView};
use crate::error::{Error, Result};
use crate::interval::{div_up, Interval};

fn term(n: u64) -> f64 {
    let e = 2 * n + 1;
    if e > 1074 {
        0.0
    } else {
        2f64.powi(-(e as i32))
    }
}

/// Upper bound of `Σ_{n > depth} 2^{-(2n+1)}` (one side).
fn one_side_tail(depth: u64) -> f64 {
    let e = 2 * depth + 1;
    let t = if e > 1074 {
        0.0
    } else {
        div_up(2f64.powi(-(e as i32)), 3.0)
    };
    t.max(f64::from_bits(1))
}

fn accumulate(pairs: impl Iterator<Item = (u64, bool)>, tail: f64) -> Interval {
    let mut sum = Interval::point(0.0);
    for (n, differs) in pairs {
        if differs {
            sum = sum.add(&Interval::point(term(n)));
        }
    }
    Interval::new(sum.lo(), sum.add_scalar(tail).hi())
}

/// Enclosure of `d(a, b)`: exact partial sum over `|n| ≤ depth` plus the
/// all-differ tail as upper slack.
pub fn sequence_distance<A: SymbolView, B: SymbolView>(a: &A, b: &B, depth: usize) -> Interval {
    let d = depth as i64;
    let pairs = (-d..=d).map(|n| (n.unsigned_abs(), a.at(n) != b.at(n)));
    accumulate(pairs, 2.0 * one_side_tail(depth as u64))
}

/// Distance restricted to one side: indices `n ≤ −1` (stable) or `n ≥ 1`
/// (unstable).
pub fn one_sided_distance<A: SymbolView, B: SymbolView>(
    a: &A,
    b: &B,
    direction: Direction,
    depth: usize,
) -> Interval {
    let sign = match direction {
        Direction::Stable => -1i64,
        Direction::Unstable => 1i64,
    };
    let pairs = (1..=depth as i64).map(|n| (n as u64, a.at(sign * n) != b.at(sign * n)));
    accumulate(pairs, one_side_tail(depth as u64))
}

/// The exact part of `one_sided_distance`: terms `1 ≤ n ≤ depth` only.
pub(crate) fn one_sided_partial<A: SymbolView, B: SymbolView>(
    a: &A,
    b: &B,
    direction: Direction,
    depth: usize,
) -> Interval {
    let sign = match direction {
        Direction::Stable => -1i64,
        Direction::Unstable => 1i64,
    };
    let pairs = (1..=depth as i64).map(|n| (n as u64, a.at(sign * n) != b.at(sign * n)));
    accumulate(pairs, 0.0)
}

/// `[a, b]`: past (including position 0) from `b`, future from `a`.
pub fn bracket(a: &BiSequence, b: &BiSequence) -> Result<BiSequence> {
    let (a0, b0) = (a.at(0), b.at(0));
    if a0 != b0 {
        return Err(Error::CenterMismatch {
            left: a0,
            right: b0,
        });
    }
    let lo = b.start.min(1);
    let hi = a.end().max(1);
    let center = (lo..hi)
        .map(|i| if i <= 0 { b.at(i) } else { a.at(i) })
        .collect();
    let lp = b.left_period.len() as i64;
    let rp = a.right_period.len() as i64;
    BiSequence::new(b.window(lo - lp, lo), center, lo, a.window(hi, hi + rp))
}
