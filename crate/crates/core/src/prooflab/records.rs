//! Return distances `d_k`, records, and the good/happy/cool classification.

use super::ModelParams;
use crate::error::{Error, Result};
use crate::interval::{Interval, Truth};
use crate::potentials::{value_at, Potential};
use crate::symbolic::distance::one_sided_partial;
use crate::symbolic::{one_sided_distance, BiSequence, Direction, OneSidedSequence, SymbolView};
use serde::Serialize;

/// Number of terms summed exactly in each one-sided distance.
pub const DISTANCE_DEPTH: usize = 480;

/// One-sided distance between `θ` seen from `k` and `θ`. When both are
/// inside their periodic tails beyond `depth` and agree there over a full
/// period, the neglected tail is exactly zero and is dropped.
fn side_distance(theta: &BiSequence, k: i64, direction: Direction, depth: usize) -> Interval {
    let y = theta.shift(k);
    let (sign, period, in_tail) = match direction {
        Direction::Stable => {
            let p = theta.left_period.len() as i64;
            (-1, p, -(depth as i64) - 1 + k.max(0) < theta.start)
        }
        Direction::Unstable => {
            let p = theta.right_period.len() as i64;
            (1, p, depth as i64 + 1 + k.min(0) >= theta.end())
        }
    };
    let d = depth as i64;
    let tail_zero = in_tail && (d + 1..=d + period).all(|n| y.at(sign * n) == theta.at(sign * n));
    if tail_zero {
        one_sided_partial(&y, theta, direction, depth)
    } else {
        one_sided_distance(&y, theta, direction, depth)
    }
}

fn side_distances(theta: &BiSequence, k: i64) -> (Interval, Interval) {
    (
        side_distance(theta, k, Direction::Stable, DISTANCE_DEPTH),
        side_distance(theta, k, Direction::Unstable, DISTANCE_DEPTH),
    )
}

/// Enclosure of `d_k`: the smaller of the distances from `p` to the points
/// obtained by replacing its past, respectively its future, by the past or
/// future of `θ` seen from `k`. `depth` terms are summed per side.
pub fn distance_profile(theta: &BiSequence, k: i64, depth: usize) -> Result<Interval> {
    let (left, right) = (theta.at(k), theta.at(0));
    if left != right {
        return Err(Error::CenterMismatch { left, right });
    }
    let s = side_distance(theta, k, Direction::Stable, depth);
    let u = side_distance(theta, k, Direction::Unstable, depth);
    Ok(s.min(&u))
}

/// Good, happy and cool flags at one position.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Happiness {
    pub left_good: Truth,
    pub right_good: Truth,
    pub left_happy: Truth,
    pub right_happy: Truth,
    pub cool: Truth,
}

fn agrees_near(theta: &BiSequence, k: i64, radius: usize) -> bool {
    let r = radius as i64;
    (-r..=r).all(|j| theta.at(k + j) == theta.at(j))
}

/// Classification of `k` (with `a_k = a_0`) against the reference value
/// `f(p)`, `p` the point with kneading sequence `θ`.
pub fn happiness(
    theta: &BiSequence,
    k: i64,
    f: &dyn Potential,
    params: &ModelParams,
) -> Result<Happiness> {
    let fp = value_at(f, theta, 0)?;
    happiness_with(theta, k, f, params, &fp)
}

fn happiness_with(
    theta: &BiSequence,
    k: i64,
    f: &dyn Potential,
    params: &ModelParams,
    fp: &Interval,
) -> Result<Happiness> {
    let (left, right) = (theta.at(k), theta.at(0));
    if left != right {
        return Err(Error::CenterMismatch { left, right });
    }
    let ps = OneSidedSequence::tail_of(theta, k, Direction::Stable).splice_into(theta);
    let pu = OneSidedSequence::tail_of(theta, k, Direction::Unstable).splice_into(theta);
    let left_good = value_at(f, &ps, 0)?.lt(fp);
    let right_good = value_at(f, &pu, 0)?.lt(fp);
    let (ds, du) = side_distances(theta, k);
    let left_happy = left_good.and(right_good.not().or(ds.ge(&du)));
    let right_happy = right_good.and(left_good.not().or(ds.lt(&du)));
    let cool = left_happy
        .or(right_happy)
        .and(Truth::from_bool(agrees_near(theta, k, params.k)));
    Ok(Happiness {
        left_good,
        right_good,
        left_happy,
        right_happy,
        cool,
    })
}

/// Everything known about one return position `k` (`a_k = a_0`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositionFlags {
    pub k: i64,
    pub d_k: Interval,
    pub weak_record: Truth,
    pub record: bool,
    #[serde(flatten)]
    pub happiness: Happiness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecordAnalysis {
    pub horizon: i64,
    /// Positions `0 < k ≤ horizon` with `a_k = a_0`.
    pub positions: Vec<PositionFlags>,
    /// The record chain `k_1 < k_2 < …` within the horizon.
    pub chain: Vec<i64>,
    /// Set when the chain could not be continued because a comparison was
    /// undecidable at this position.
    pub undecided_at: Option<i64>,
    /// `θ` is itself a periodic orbit, so every `d_k` with `k` a multiple
    /// of the period encloses 0.
    pub periodic: bool,
}

impl RecordAnalysis {
    pub fn position(&self, k: i64) -> Option<&PositionFlags> {
        self.positions
            .binary_search_by_key(&k, |p| p.k)
            .ok()
            .map(|i| &self.positions[i])
    }
}

/// Records and flags for `θ` up to `horizon`.
pub fn records(
    theta: &BiSequence,
    f: &dyn Potential,
    params: &ModelParams,
    horizon: i64,
) -> Result<RecordAnalysis> {
    let fp = value_at(f, theta, 0)?;
    let a0 = theta.at(0);
    let ks: Vec<i64> = (1..=horizon).filter(|&k| theta.at(k) == a0).collect();
    let mut positions = Vec::with_capacity(ks.len());
    // running min of lower and upper bounds of earlier d_j
    let (mut min_lo, mut min_hi) = (f64::INFINITY, f64::INFINITY);
    for &k in &ks {
        let (ds, du) = side_distances(theta, k);
        let d_k = ds.min(&du);
        let weak_record = if d_k.hi() < min_lo {
            Truth::True
        } else if d_k.lo() >= min_hi {
            Truth::False
        } else {
            Truth::Indeterminate
        };
        min_lo = min_lo.min(d_k.lo());
        min_hi = min_hi.min(d_k.hi());
        positions.push(PositionFlags {
            k,
            d_k,
            weak_record,
            record: false,
            happiness: happiness_with(theta, k, f, params, &fp)?,
        });
    }
    let mut chain = Vec::new();
    let mut undecided_at = None;
    if let Some(first) = positions.first_mut() {
        first.record = true;
        chain.push(first.k);
        let factor = params.record_factor();
        let mut bound = first.d_k.scale(factor);
        for p in positions.iter_mut().skip(1) {
            let next = p.weak_record.and(p.d_k.lt(&bound));
            match next {
                Truth::True => {
                    p.record = true;
                    chain.push(p.k);
                    bound = p.d_k.scale(factor);
                }
                Truth::False => {}
                Truth::Indeterminate => {
                    undecided_at = Some(p.k);
                    break;
                }
            }
        }
    }
    Ok(RecordAnalysis {
        horizon,
        positions,
        chain,
        undecided_at,
        periodic: theta.is_periodic(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{GaussPotential, WindowPotential};
    use crate::symbolic::Sft;

    fn params() -> ModelParams {
        ModelParams::new(1.0, 1.0, 0.3, 0.5, 21, 2).unwrap()
    }

    fn ones_with_twos(twos: &[i64]) -> BiSequence {
        let hi = twos.iter().max().copied().unwrap_or(0) + 1;
        let center = (0..hi)
            .map(|i| if twos.contains(&i) { 2 } else { 1 })
            .collect();
        BiSequence::new(vec![1], center, 0, vec![1]).unwrap()
    }

    #[test]
    fn periodic_return_encloses_zero() {
        let x = BiSequence::periodic(vec![1, 2, 2]);
        for depth in [1, 10, 100] {
            assert!(distance_profile(&x, 3, depth).unwrap().contains(0.0));
        }
        assert!(matches!(
            distance_profile(&x, 1, 10),
            Err(Error::CenterMismatch { .. })
        ));
    }

    #[test]
    fn single_defect_matches_series() {
        let j = 3;
        let x = ones_with_twos(&[j]);
        for k in [5i64, 8, 12] {
            let d = distance_profile(&x, k, 200).unwrap();
            // stable side differs only at n = k − j, unstable side at n = j
            let s = 2f64.powi(-(2 * (k - j) as i32 + 1));
            let u = 2f64.powi(-(2 * j as i32 + 1));
            assert!(d.contains(s.min(u)), "{k} {d}");
        }
    }

    #[test]
    fn immediate_mismatch_gives_first_term() {
        // both neighbours of k = 5 differ from those of 0
        let x = ones_with_twos(&[4, 6]);
        let d = distance_profile(&x, 5, 50).unwrap();
        assert!(d.lo() >= 0.125);
    }

    #[test]
    fn constant_sequence_is_degenerate() {
        let x = BiSequence::periodic(vec![1]);
        let f = GaussPotential::new(10).unwrap();
        let r = records(&x, &f, &params(), 20).unwrap();
        assert!(r.periodic);
        assert_eq!(r.chain.first(), Some(&1));
        assert!(r.positions.iter().all(|p| p.d_k.contains(0.0)));
        let h = r.positions[0].happiness;
        assert_eq!(h.left_good, Truth::Indeterminate);
        assert_eq!(h.cool, Truth::Indeterminate);
    }

    /// Definitions re-implemented on exact dyadic distances.
    fn brute_chain(x: &BiSequence, horizon: i64, factor: f64) -> Vec<i64> {
        let d = |k: i64| -> f64 {
            let side = |sign: i64| -> f64 {
                (1..300)
                    .filter(|&n| x.at(k + sign * n) != x.at(sign * n))
                    .map(|n| 2f64.powi(-(2 * n as i32 + 1)))
                    .sum()
            };
            side(-1).min(side(1))
        };
        let ks: Vec<i64> = (1..=horizon).filter(|&k| x.at(k) == x.at(0)).collect();
        let weak = |k: i64| ks.iter().take_while(|&&j| j < k).all(|&j| d(k) < d(j));
        let mut chain = vec![ks[0]];
        for &k in &ks[1..] {
            if weak(k) && d(k) < factor * d(*chain.last().unwrap()) {
                chain.push(k);
            }
        }
        chain
    }

    #[test]
    fn chain_matches_definitions() {
        let x = ones_with_twos(&[10, 30, 70]);
        let s = Sft::full(2);
        let f = WindowPotential::from_fn(&s, 1, 1, |w| w.iter().sum::<u32>() as f64).unwrap();
        let p = params();
        let r = records(&x, &f, &p, 100).unwrap();
        assert_eq!(r.undecided_at, None);
        assert_eq!(r.chain, brute_chain(&x, 100, p.record_factor()));
        for q in &r.positions {
            assert!(!(q.record && q.weak_record != Truth::True && q.k != r.chain[0]));
            assert!(!(q.happiness.left_happy.is_true() && q.happiness.right_happy.is_true()));
        }
    }

    #[test]
    fn cool_needs_agreement() {
        // happy at k = 3 but a mismatch sits at distance 2 from it
        let x = ones_with_twos(&[0, 3, 5]);
        let s = Sft::full(2);
        let f = WindowPotential::from_fn(&s, 0, 0, |w| w[0] as f64).unwrap();
        let p = params();
        let h = happiness(&x, 3, &f, &p).unwrap();
        assert_eq!(h.cool, Truth::False);
    }
}
