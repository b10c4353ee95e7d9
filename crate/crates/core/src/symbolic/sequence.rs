//! Finite words, periodic orbits, and eventually periodic bi-infinite
//! sequences.

use super::sft::Sft;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Read access to a bi-infinite symbol sequence.
pub trait SymbolView {
    fn at(&self, i: i64) -> u32;

    /// Symbols at positions `lo..hi`.
    fn window(&self, lo: i64, hi: i64) -> Vec<u32> {
        (lo..hi).map(|i| self.at(i)).collect()
    }
}

impl<T: SymbolView + ?Sized> SymbolView for &T {
    fn at(&self, i: i64) -> u32 {
        (**self).at(i)
    }
}

/// A finite word placed in ℤ: `symbols[0]` sits at position `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    pub symbols: Vec<u32>,
    pub start: i64,
}

impl Word {
    pub fn new(symbols: Vec<u32>, start: i64) -> Self {
        Word { symbols, start }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_admissible(&self, sft: &Sft) -> Result<bool> {
        sft.is_admissible(&self.symbols)
    }
}

/// Index of the lexicographically least rotation (first one on ties).
pub fn least_rotation(w: &[u32]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = w[(i + k) % n];
        let b = w[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Length of the shortest `u` with `w = u^n`.
pub fn primitive_period(w: &[u32]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && w[i] != w[k] {
            k = pi[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        pi[i] = k;
    }
    let p = n - pi[n - 1];
    if n % p == 0 {
        p
    } else {
        n
    }
}

pub fn is_primitive(w: &[u32]) -> bool {
    !w.is_empty() && primitive_period(w) == w.len()
}

/// A periodic orbit, stored as the least rotation of its primitive period.
///
/// As a bi-infinite sequence, `word[0]` sits at position 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PeriodicSequence {
    word: Vec<u32>,
    /// How many copies of the primitive period the input contained.
    repetitions: usize,
    /// Offset of the canonical rotation inside the input word.
    rotation: usize,
}

impl PeriodicSequence {
    pub fn new(symbols: &[u32]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidInput("period word must be nonempty".into()));
        }
        let p = primitive_period(symbols);
        let root = &symbols[..p];
        let r = least_rotation(root);
        let word: Vec<u32> = root[r..].iter().chain(&root[..r]).copied().collect();
        Ok(PeriodicSequence {
            word,
            repetitions: symbols.len() / p,
            rotation: r,
        })
    }

    /// Like [`PeriodicSequence::new`] but also checks cyclic admissibility.
    pub fn in_sft(sft: &Sft, symbols: &[u32]) -> Result<Self> {
        if !sft.is_cyclically_admissible(symbols)? {
            return Err(Error::Inadmissible(format!(
                "periodic word {symbols:?} is not cyclically admissible"
            )));
        }
        Self::new(symbols)
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub fn repetitions(&self) -> usize {
        self.repetitions
    }

    pub fn rotation(&self) -> usize {
        self.rotation
    }

    pub fn to_bi(&self) -> BiSequence {
        BiSequence::periodic(self.word.clone())
    }
}

impl SymbolView for PeriodicSequence {
    fn at(&self, i: i64) -> u32 {
        self.word[i.rem_euclid(self.word.len() as i64) as usize]
    }
}

/// Eventually periodic bi-infinite sequence.
///
/// Positions `start..start+center.len()` read `center`. To the left the
/// sequence repeats `left_period`, aligned so that `left_period[k]` sits at
/// `start - left_period.len() + k`; to the right it repeats `right_period`
/// starting at `start + center.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiSequence {
    pub left_period: Vec<u32>,
    pub center: Vec<u32>,
    pub start: i64,
    pub right_period: Vec<u32>,
}

impl BiSequence {
    pub fn new(
        left_period: Vec<u32>,
        center: Vec<u32>,
        start: i64,
        right_period: Vec<u32>,
    ) -> Result<Self> {
        if left_period.is_empty() || right_period.is_empty() {
            return Err(Error::InvalidInput("tail periods must be nonempty".into()));
        }
        Ok(BiSequence {
            left_period,
            center,
            start,
            right_period,
        })
    }

    /// Purely periodic sequence with `word[0]` at position 0.
    pub fn periodic(word: Vec<u32>) -> Self {
        assert!(!word.is_empty());
        BiSequence {
            left_period: word.clone(),
            center: Vec::new(),
            start: 0,
            right_period: word,
        }
    }

    /// First position of the right periodic tail.
    pub fn end(&self) -> i64 {
        self.start + self.center.len() as i64
    }

    /// Shifted copy `y` with `y_n = x_{n+k}`.
    pub fn shift(&self, k: i64) -> BiSequence {
        BiSequence {
            start: self.start - k,
            ..self.clone()
        }
    }

    pub fn is_admissible(&self, sft: &Sft) -> Result<bool> {
        let lp = self.left_period.len() as i64;
        let rp = self.right_period.len() as i64;
        // Covers both tails' wrap-arounds and the junctions with the center.
        let w = self.window(self.start - lp - 1, self.end() + rp + 1);
        sft.is_admissible(&w)
    }

    /// Forward tail as a periodic orbit.
    pub fn forward_orbit(&self) -> PeriodicSequence {
        PeriodicSequence::new(&self.right_period).expect("nonempty period")
    }

    pub fn backward_orbit(&self) -> PeriodicSequence {
        PeriodicSequence::new(&self.left_period).expect("nonempty period")
    }

    /// True when the sequence is a single periodic orbit.
    pub fn is_periodic(&self) -> bool {
        let p = self.right_period.len() as i64;
        let q = self.left_period.len() as i64;
        let period = p * q / num_integer::gcd(p, q);
        let lo = self.start - p - q - period;
        let hi = self.end() + p + period;
        (lo..hi).all(|i| self.at(i) == self.at(i + p))
    }

    /// Positions whose symbols may differ from both periodic tails,
    /// padded by one period on each side.
    pub fn core_range(&self) -> (i64, i64) {
        (
            self.start - self.left_period.len() as i64,
            self.end() + self.right_period.len() as i64,
        )
    }
}

impl SymbolView for BiSequence {
    fn at(&self, i: i64) -> u32 {
        if i < self.start {
            let p = self.left_period.len() as i64;
            self.left_period[(i - self.start).rem_euclid(p) as usize]
        } else if i < self.end() {
            self.center[(i - self.start) as usize]
        } else {
            let p = self.right_period.len() as i64;
            self.right_period[(i - self.end()).rem_euclid(p) as usize]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Indices ≤ −1.
    Stable,
    /// Indices ≥ 1.
    Unstable,
}

/// One-sided eventually periodic sequence. For `Stable` the symbols are
/// listed outward: `preperiod[0]` is index −1, `preperiod[1]` is −2, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneSidedSequence {
    pub direction: Direction,
    pub preperiod: Vec<u32>,
    pub period: Vec<u32>,
}

impl OneSidedSequence {
    /// The tail of `x` seen from position `k`: symbols `x_{k+1}, x_{k+2}, …`
    /// (unstable) or `x_{k-1}, x_{k-2}, …` (stable).
    pub fn tail_of(x: &BiSequence, k: i64, direction: Direction) -> Self {
        match direction {
            Direction::Unstable => {
                let end = x.end().max(k + 1);
                let preperiod = x.window(k + 1, end);
                let period = x.window(end, end + x.right_period.len() as i64);
                OneSidedSequence {
                    direction,
                    preperiod,
                    period,
                }
            }
            Direction::Stable => {
                let start = x.start.min(k);
                let mut preperiod = x.window(start, k);
                preperiod.reverse();
                let lp = x.left_period.len() as i64;
                let mut period = x.window(start - lp, start);
                period.reverse();
                OneSidedSequence {
                    direction,
                    preperiod,
                    period,
                }
            }
        }
    }

    /// Symbol at outward distance `j ≥ 1` from the origin.
    pub fn outward(&self, j: usize) -> u32 {
        assert!(j >= 1);
        let j = j - 1;
        if j < self.preperiod.len() {
            self.preperiod[j]
        } else {
            self.period[(j - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Replace the corresponding half of `p` by this tail: π^s / π^u.
    pub fn splice_into(&self, p: &BiSequence) -> BiSequence {
        match self.direction {
            Direction::Unstable => {
                let mut center = p.window(p.start.min(0), 1);
                let start = p.start.min(0);
                center.extend(&self.preperiod);
                let lp = p.left_period.len() as i64;
                let left = p.window(start - lp, start);
                BiSequence {
                    left_period: left,
                    center,
                    start,
                    right_period: self.period.clone(),
                }
            }
            Direction::Stable => {
                let end = p.end().max(0);
                let mut center: Vec<u32> = self.preperiod.iter().rev().copied().collect();
                let start = -(self.preperiod.len() as i64);
                center.extend(p.window(0, end));
                let left: Vec<u32> = self.period.iter().rev().copied().collect();
                // left tail must end at `start - 1` reading outward period[0]
                let right = p.window(end, end + p.right_period.len() as i64);
                BiSequence {
                    left_period: left,
                    center,
                    start,
                    right_period: right,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rotation_and_primitive_root() {
        let p = PeriodicSequence::new(&[2, 1, 2, 1]).unwrap();
        assert_eq!(p.word(), &[1, 2]);
        assert_eq!(p.repetitions(), 2);
        let q = PeriodicSequence::new(&[2, 1, 1]).unwrap();
        assert_eq!(q.word(), &[1, 1, 2]);
        assert_eq!(q.rotation(), 1);
        assert_eq!(least_rotation(&[3, 1, 2, 1, 1]), 3);
        assert_eq!(primitive_period(&[1, 2, 1, 2, 1]), 5);
        assert_eq!(primitive_period(&[1, 1, 1]), 1);
    }

    #[test]
    fn bisequence_indexing() {
        // ... 3 4 3 4 | 7 8 9 | 5 6 5 6 ...
        let x = BiSequence::new(vec![3, 4], vec![7, 8, 9], 10, vec![5, 6]).unwrap();
        assert_eq!(x.window(6, 17), vec![3, 4, 3, 4, 7, 8, 9, 5, 6, 5, 6]);
        let y = x.shift(10);
        assert_eq!(y.at(0), 7);
        assert_eq!(y.at(-1), 4);
        assert_eq!(y.at(3), 5);
    }

    #[test]
    fn one_sided_tails_and_splice() {
        let x = BiSequence::new(vec![1], vec![2, 3, 4], -1, vec![5]).unwrap();
        let u = OneSidedSequence::tail_of(&x, 0, Direction::Unstable);
        assert_eq!((u.outward(1), u.outward(2), u.outward(5)), (4, 5, 5));
        let s = OneSidedSequence::tail_of(&x, 1, Direction::Stable);
        assert_eq!((s.outward(1), s.outward(2), s.outward(3)), (3, 2, 1));

        let p = BiSequence::periodic(vec![9]);
        let y = u.splice_into(&p);
        assert_eq!(y.window(-3, 4), vec![9, 9, 9, 9, 4, 5, 5]);
        let z = s.splice_into(&p);
        assert_eq!(z.window(-5, 2), vec![1, 1, 1, 2, 3, 9, 9]);
    }

    #[test]
    fn periodicity_detection() {
        assert!(BiSequence::periodic(vec![1, 2]).is_periodic());
        let x = BiSequence::new(vec![1, 2], vec![1, 2, 1], 0, vec![2, 1]).unwrap();
        assert!(x.is_periodic());
        let y = BiSequence::new(vec![1], vec![2], 0, vec![1]).unwrap();
        assert!(!y.is_periodic());
    }
}
