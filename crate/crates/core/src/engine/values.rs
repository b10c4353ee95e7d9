//! Markov and Lagrange values of periodic and eventually periodic orbits.

use crate::error::Result;
use crate::interval::Interval;
use crate::potentials::{value_at, Potential};
use crate::symbolic::{BiSequence, PeriodicSequence, SymbolView};
use serde::Serialize;

/// Maximum of `f` over positions `range`, with the first position whose
/// lower bound is largest.
fn max_over<V: SymbolView>(
    f: &dyn Potential,
    x: &V,
    range: impl Iterator<Item = i64>,
) -> Result<(Interval, i64)> {
    let mut best: Option<(Interval, i64)> = None;
    for n in range {
        let v = value_at(f, x, n)?;
        best = Some(match best {
            None => (v, n),
            Some((b, p)) => {
                let pos = if v.lo() > b.lo() { n } else { p };
                (b.max(&v), pos)
            }
        });
    }
    Ok(best.expect("nonempty range"))
}

/// `sup_n f(σ^n x)` over one period, with the attaining offset.
pub fn periodic_markov_value(x: &PeriodicSequence, f: &dyn Potential) -> Result<(Interval, i64)> {
    max_over(f, x, 0..x.period() as i64)
}

/// `sup_n f(σ^n x)`: the preperiod and one period of each tail.
pub fn markov_value(x: &BiSequence, f: &dyn Potential) -> Result<Interval> {
    let lp = x.left_period.len() as i64;
    let rp = x.right_period.len() as i64;
    let lo = x.start - f.right_radius() as i64 - lp;
    let hi = x.end() + f.left_radius() as i64 + rp;
    Ok(max_over(f, x, lo..hi)?.0)
}

/// `limsup_{n→∞} f(σ^n x)`: one period of windows inside the right tail.
pub fn lagrange_value(x: &BiSequence, f: &dyn Potential) -> Result<Interval> {
    let start = x.end() + f.left_radius() as i64;
    let rp = x.right_period.len() as i64;
    Ok(max_over(f, x, start..start + rp)?.0)
}

/// A periodic orbit with its Markov value and where it is attained.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleCertificate {
    pub cycle: PeriodicSequence,
    pub value: Interval,
    pub attaining_offset: i64,
}

impl CycleCertificate {
    pub fn new(cycle: PeriodicSequence, f: &dyn Potential) -> Result<Self> {
        let (value, attaining_offset) = periodic_markov_value(&cycle, f)?;
        Ok(CycleCertificate {
            cycle,
            value,
            attaining_offset,
        })
    }

    /// Re-evaluate the cycle and check it matches the stored value.
    pub fn verify(&self, f: &dyn Potential) -> Result<bool> {
        Ok(periodic_markov_value(&self.cycle, f)?.0 == self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{GaussPotential, WindowPotential};
    use crate::symbolic::Sft;
    use crate::classical::lagrange_number;

    #[test]
    fn golden_fixed_point() {
        let f = GaussPotential::new(20).unwrap();
        let x = PeriodicSequence::new(&[1]).unwrap();
        let (v, _) = periodic_markov_value(&x, &f).unwrap();
        assert!(v.contains(5f64.sqrt()) && v.width() < 1e-7);
    }

    #[test]
    fn period_two_matches_surd() {
        let f = GaussPotential::new(20).unwrap();
        let x = PeriodicSequence::new(&[1, 2]).unwrap();
        let (v, off) = periodic_markov_value(&x, &f).unwrap();
        let exact = lagrange_number(&[1, 2]).unwrap().enclosure();
        assert!(v.overlaps(&exact) && v.width() < 1e-7);
        assert_eq!(x.at(off), 2);
    }

    #[test]
    fn lagrange_ignores_spikes() {
        let f = GaussPotential::new(12).unwrap();
        let x = BiSequence::new(vec![1], vec![1, 9, 1], 0, vec![1]).unwrap();
        let l = lagrange_value(&x, &f).unwrap();
        let m = markov_value(&x, &f).unwrap();
        assert!(l.contains(5f64.sqrt()));
        assert!(m.lo() > 9.0);
    }

    #[test]
    fn constant_potential() {
        let s = Sft::full(2);
        let f = WindowPotential::constant(&s, 0.75).unwrap();
        let x = BiSequence::new(vec![1, 2], vec![2, 2, 1], -1, vec![2]).unwrap();
        assert_eq!(markov_value(&x, &f).unwrap(), Interval::point(0.75));
    }
}
