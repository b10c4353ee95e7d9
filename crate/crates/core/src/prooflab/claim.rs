//! Powers `γ^{2m}` centered at the origin, strange positions relative to a
//! periodic pattern, and the deletion surgery.

use crate::engine::periodic_markov_value;
use crate::error::{Error, Result};
use crate::interval::{Interval, Truth};
use crate::potentials::Potential;
use crate::symbolic::{is_primitive, PeriodicSequence, Sft, SymbolView, Word};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum PowerFactor {
    Clean,
    /// `(a_{−mt}, …, a_{mt−1}) = γ^{2m}` with `γ` primitive of length `t`.
    Violation { t: usize, gamma: Vec<u32> },
}

impl PowerFactor {
    pub fn is_clean(&self) -> bool {
        matches!(self, PowerFactor::Clean)
    }
}

/// Least `t ≤ max_t` such that the window `[−mt, mt)` of `θ` is a `2m`-th
/// power of a word of length `t`. The least such `t` always has a
/// primitive root.
pub fn power_factor_check<V: SymbolView + ?Sized>(theta: &V, m: usize, max_t: usize) -> PowerFactor {
    let m = m as i64;
    for t in 1..=max_t as i64 {
        let lo = -m * t;
        let hi = m * t;
        if (lo..hi - t).all(|i| theta.at(i) == theta.at(i + t)) {
            return PowerFactor::Violation {
                t: t as usize,
                gamma: theta.window(0, t),
            };
        }
    }
    PowerFactor::Clean
}

struct Placed<'a>(&'a Word);

impl SymbolView for Placed<'_> {
    fn at(&self, i: i64) -> u32 {
        self.0.symbols[(i - self.0.start) as usize]
    }
}

/// `power_factor_check` on a finite word; every `t ≤ max_t` must have its
/// window inside the word.
pub fn power_factor_check_word(w: &Word, m: usize, max_t: usize) -> Result<PowerFactor> {
    let reach = (m * max_t) as i64;
    let end = w.start + w.len() as i64;
    if w.start > -reach {
        return Err(Error::OutOfHorizon(-reach));
    }
    if end < reach {
        return Err(Error::OutOfHorizon(reach - 1));
    }
    Ok(power_factor_check(&Placed(w), m, max_t))
}

/// Positions `k ∈ [lo, hi)` at which the factor `c_{k+1−s} … c_{k+1}` of
/// `θ` (length `s + 1`, `s = |α|`) does not occur in `ᾱ`.
pub fn strange_positions<V: SymbolView + ?Sized>(
    theta: &V,
    alpha: &[u32],
    lo: i64,
    hi: i64,
) -> Result<Vec<i64>> {
    if alpha.is_empty() || !is_primitive(alpha) {
        return Err(Error::NotPrimitive);
    }
    let s = alpha.len();
    let factors: HashSet<Vec<u32>> = (0..s)
        .map(|j| (0..=s).map(|i| alpha[(j + i) % s]).collect())
        .collect();
    let s = s as i64;
    Ok((lo..hi)
        .filter(|&k| !factors.contains(&theta.window(k + 1 - s, k + 2)))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurgeryReport {
    pub original: Vec<u32>,
    pub surgered: Vec<u32>,
    /// Markov value of the periodic closure of each word.
    pub original_value: Interval,
    pub surgered_value: Interval,
    pub reduced: Truth,
}

/// Delete the copy of `γ` at `pos` from `word` and compare the Markov
/// values of the periodic closures before and after.
pub fn deletion_surgery(
    word: &[u32],
    pos: usize,
    gamma: &[u32],
    sft: &Sft,
    f: &dyn Potential,
) -> Result<SurgeryReport> {
    if gamma.is_empty() || word.get(pos..pos + gamma.len()) != Some(gamma) {
        return Err(Error::InvalidInput(format!(
            "gamma does not occur at position {pos}"
        )));
    }
    let mut surgered = word[..pos].to_vec();
    surgered.extend(&word[pos + gamma.len()..]);
    if surgered.is_empty() {
        return Err(Error::Inadmissible("surgery leaves an empty word".into()));
    }
    for w in [word, &surgered[..]] {
        if !sft.is_cyclically_admissible(w)? {
            return Err(Error::Inadmissible(format!("{w:?}")));
        }
    }
    let original_value = periodic_markov_value(&PeriodicSequence::new(word)?, f)?.0;
    let surgered_value = periodic_markov_value(&PeriodicSequence::new(&surgered)?, f)?.0;
    Ok(SurgeryReport {
        original: word.to_vec(),
        reduced: surgered_value.lt(&original_value),
        surgered,
        original_value,
        surgered_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::GaussPotential;
    use crate::symbolic::BiSequence;

    #[test]
    fn constant_is_every_power() {
        let x = BiSequence::periodic(vec![1]);
        for m in 1..5 {
            assert_eq!(
                power_factor_check(&x, m, 10),
                PowerFactor::Violation {
                    t: 1,
                    gamma: vec![1]
                }
            );
        }
    }

    #[test]
    fn planted_block() {
        let m = 3;
        let gamma = [1, 2, 2];
        let block: Vec<u32> = gamma.iter().copied().cycle().take(3 * 2 * m).collect();
        let x = BiSequence::new(vec![1, 1, 2, 1], block, -(3 * m as i64), vec![2, 1]).unwrap();
        assert_eq!(
            power_factor_check(&x, m, 20),
            PowerFactor::Violation {
                t: 3,
                gamma: gamma.to_vec()
            }
        );
    }

    #[test]
    fn word_range_is_checked() {
        let w = Word::new(vec![1; 10], -5);
        assert!(power_factor_check_word(&w, 2, 2).is_ok());
        assert!(power_factor_check_word(&w, 2, 3).is_err());
    }

    #[test]
    fn strange_positions_of_periodic_and_flipped() {
        let alpha = [1, 1, 2];
        let x = BiSequence::periodic(alpha.to_vec());
        for k in 0..3 {
            assert!(strange_positions(&x.shift(k), &alpha, -30, 30).unwrap().is_empty());
        }
        let mut center: Vec<u32> = alpha.iter().copied().cycle().take(12).collect();
        center[6] = 2;
        let y = BiSequence::new(alpha.to_vec(), center, -6, alpha.to_vec()).unwrap();
        let st = strange_positions(&y, &alpha, -30, 30).unwrap();
        assert!(!st.is_empty());
        assert!(st.iter().all(|&k| (-3..=3).contains(&k)));
        assert!(matches!(
            strange_positions(&y, &[1, 2, 1, 2], 0, 1),
            Err(Error::NotPrimitive)
        ));
    }

    #[test]
    fn phase_slip_is_strange() {
        let alpha = [1, 2, 2];
        let y = BiSequence::new(vec![1, 2, 2], vec![1], 0, vec![1, 2, 2]).unwrap();
        assert!(!strange_positions(&y, &alpha, -20, 20).unwrap().is_empty());
    }

    #[test]
    fn surgery_on_repeated_block_is_neutral() {
        let s = Sft::full(2);
        let f = GaussPotential::new(12).unwrap();
        let g = [1, 2];
        let word: Vec<u32> = g.iter().copied().cycle().take(6).collect();
        let r = deletion_surgery(&word, 2, &g, &s, &f).unwrap();
        assert_eq!(r.original_value, r.surgered_value);
        assert_ne!(r.reduced, Truth::True);
    }

    #[test]
    fn surgery_removing_a_peak_lowers_the_value() {
        let s = Sft::full(3);
        let f = GaussPotential::new(12).unwrap();
        let word = [1, 1, 3, 1, 1, 2];
        let r = deletion_surgery(&word, 2, &[3], &s, &f).unwrap();
        assert_eq!(r.reduced, Truth::True);
        assert!(deletion_surgery(&word, 1, &[3], &s, &f).is_err());
    }
}
