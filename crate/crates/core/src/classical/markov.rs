//! Markov triples and the part of the classical spectrum below 3.

use super::cf::lagrange_number;
use super::surd::QuadraticSurd;
use crate::error::Result;
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Solution of `x² + y² + z² = 3xyz` with `x ≤ y ≤ z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MarkovTriple {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl MarkovTriple {
    fn sorted(mut v: [u64; 3]) -> Self {
        v.sort_unstable();
        MarkovTriple { x: v[0], y: v[1], z: v[2] }
    }

    pub fn is_solution(&self) -> bool {
        let (x, y, z) = (self.x as u128, self.y as u128, self.z as u128);
        x * x + y * y + z * z == 3 * x * y * z
    }
}

/// All Markov triples with largest entry at most `z_max`, sorted by `z`.
pub fn markov_triples(z_max: u64) -> Vec<MarkovTriple> {
    let mut seen = BTreeSet::new();
    if z_max == 0 {
        return Vec::new();
    }
    let mut stack = vec![MarkovTriple { x: 1, y: 1, z: 1 }];
    seen.insert(stack[0]);
    while let Some(t) = stack.pop() {
        let v = [t.x, t.y, t.z];
        for i in 0..3 {
            let (a, b) = (v[(i + 1) % 3] as u128, v[(i + 2) % 3] as u128);
            let flipped = 3 * a * b - v[i] as u128;
            if flipped > z_max as u128 {
                continue;
            }
            let mut w = v;
            w[i] = flipped as u64;
            let n = MarkovTriple::sorted(w);
            if seen.insert(n) {
                stack.push(n);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by_key(|t| (t.z, t.y, t.x));
    out
}

/// `√(9 − 4/z²) = √(9z² − 4) / z`.
pub fn markov_lagrange_value(z: u64) -> Result<QuadraticSurd> {
    let z = BigInt::from(z);
    QuadraticSurd::new(
        BigInt::from(0),
        BigInt::from(1),
        BigInt::from(9) * &z * &z - 4,
        z,
    )
}

/// Values of the classical Lagrange spectrum below 3 for Markov numbers up
/// to `z_max`, increasing.
pub fn classical_lagrange_below_3(z_max: u64) -> Result<Vec<(u64, QuadraticSurd)>> {
    let zs: BTreeSet<u64> = markov_triples(z_max).iter().map(|t| t.z).collect();
    zs.into_iter()
        .map(|z| markov_lagrange_value(z).map(|v| (z, v)))
        .collect()
}

/// Periods of continued fractions realising each Markov number up to
/// `z_max`, built from the tree of Christoffel words over the blocks
/// `1 1` and `2 2`.
pub fn markov_periods(z_max: u64) -> BTreeMap<u64, Vec<u64>> {
    let mut out = BTreeMap::new();
    let a = vec![1u64, 1];
    let b = vec![2u64, 2];
    if z_max >= 1 {
        out.insert(1, a.clone());
    }
    if z_max >= 2 {
        out.insert(2, b.clone());
    }
    // (u, m_u), (v, m_v), (uv, m_uv)
    let mut stack = vec![(a.clone(), 1u128, b.clone(), 2u128, 5u128)];
    while let Some((u, mu, v, mv, mw)) = stack.pop() {
        if mw > z_max as u128 {
            continue;
        }
        let w: Vec<u64> = u.iter().chain(v.iter()).copied().collect();
        out.entry(mw as u64).or_insert_with(|| w.clone());
        stack.push((u.clone(), mu, w.clone(), mw, 3 * mu * mw - mv));
        stack.push((w, mw, v, mv, 3 * mw * mv - mu));
    }
    out
}

/// Cross-check of the two routes for each Markov number up to `z_max`:
/// the closed form against the Lagrange value of the Christoffel period.
pub fn markov_route_agreement(z_max: u64) -> Result<Vec<(u64, bool)>> {
    markov_periods(z_max)
        .into_iter()
        .map(|(z, w)| Ok((z, lagrange_number(&w)? == markov_lagrange_value(z)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_markov_numbers() {
        let zs: BTreeSet<u64> = markov_triples(1000).iter().map(|t| t.z).collect();
        let expected = [1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985];
        assert_eq!(zs.into_iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn triples_solve_the_equation() {
        for t in markov_triples(100_000) {
            assert!(t.is_solution(), "{t:?}");
        }
    }

    #[test]
    fn spectrum_values_increase_below_three() {
        let vals = classical_lagrange_below_3(10_000).unwrap();
        let three = QuadraticSurd::integer(3);
        for w in vals.windows(2) {
            assert!(w[0].1 < w[1].1);
        }
        assert!(vals.iter().all(|(_, v)| *v < three));
        assert_eq!(vals[0].1, QuadraticSurd::sqrt_of(5).unwrap());
    }

    #[test]
    fn routes_agree() {
        for (z, ok) in markov_route_agreement(2000).unwrap() {
            assert!(ok, "disagreement at {z}");
        }
    }
}
