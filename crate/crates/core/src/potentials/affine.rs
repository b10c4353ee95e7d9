//! The affine model `f(x, y) = a x + b λ y + c` over Cantor-set coordinates.

use super::Potential;
use crate::error::{Error, Result};
use crate::interval::Interval;
use std::sync::Arc;

/// Self-similar embedding of one-sided words into `[0, 1]`: symbol `σ` maps
/// `[0, 1]` onto `[o_σ, o_σ + ρ_σ]`, the pieces in alphabet order separated
/// by equal gaps.
#[derive(Clone, Debug, PartialEq)]
pub struct CantorEmbedding {
    alphabet: Vec<u32>,
    ratios: Vec<f64>,
    offsets: Vec<f64>,
}

/// Default contraction bounds `(λ₁, λ₂)`.
pub const DEFAULT_LAMBDA1: f64 = 0.3;
pub const DEFAULT_LAMBDA2: f64 = 0.5;

impl CantorEmbedding {
    pub fn new(alphabet: Vec<u32>, ratios: Vec<f64>) -> Result<Self> {
        if alphabet.is_empty() || alphabet.len() != ratios.len() {
            return Err(Error::InvalidPotential(
                "embedding needs one ratio per symbol".into(),
            ));
        }
        if ratios.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return Err(Error::InvalidPotential("ratios must lie in (0, 1)".into()));
        }
        let total: f64 = ratios.iter().sum();
        if total >= 1.0 && alphabet.len() > 1 {
            return Err(Error::InvalidPotential(
                "ratios must sum below 1 for an injective embedding".into(),
            ));
        }
        let mut order: Vec<usize> = (0..alphabet.len()).collect();
        order.sort_by_key(|&i| alphabet[i]);
        let alphabet: Vec<u32> = order.iter().map(|&i| alphabet[i]).collect();
        let ratios: Vec<f64> = order.iter().map(|&i| ratios[i]).collect();
        let gap = if alphabet.len() > 1 {
            (1.0 - total) / (alphabet.len() - 1) as f64
        } else {
            0.0
        };
        let mut offsets = Vec::with_capacity(ratios.len());
        let mut o = 0.0;
        for r in &ratios {
            offsets.push(o);
            o += r + gap;
        }
        Ok(CantorEmbedding {
            alphabet,
            ratios,
            offsets,
        })
    }

    pub fn uniform(alphabet: &[u32], ratio: f64) -> Result<Self> {
        Self::new(alphabet.to_vec(), vec![ratio; alphabet.len()])
    }

    /// Ratio halfway between the default bounds, shrunk if needed so the
    /// pieces stay disjoint.
    pub fn default_for(alphabet: &[u32]) -> Result<Self> {
        let mid = 0.5 * (DEFAULT_LAMBDA1 + DEFAULT_LAMBDA2);
        let r = mid.min(0.9 / alphabet.len().max(1) as f64);
        Self::uniform(alphabet, r)
    }

    fn index(&self, s: u32) -> Result<usize> {
        self.alphabet
            .binary_search(&s)
            .map_err(|_| Error::SymbolNotInAlphabet(s))
    }

    pub fn ratio(&self, s: u32) -> Result<f64> {
        Ok(self.ratios[self.index(s)?])
    }

    pub fn min_ratio(&self) -> f64 {
        self.ratios.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_ratio(&self) -> f64 {
        self.ratios.iter().copied().fold(0.0, f64::max)
    }

    /// Product of the ratios of `word`: the length of its cylinder.
    pub fn length(&self, word: &[u32]) -> Result<f64> {
        word.iter().try_fold(1.0, |acc, &s| Ok(acc * self.ratio(s)?))
    }

    /// Rigorous enclosure of the cylinder interval of `word`.
    pub fn cylinder(&self, word: &[u32]) -> Result<Interval> {
        let mut iv = Interval::new(0.0, 1.0);
        for &s in word.iter().rev() {
            let i = self.index(s)?;
            iv = iv
                .mul(&Interval::point(self.ratios[i]))
                .add(&Interval::point(self.offsets[i]));
        }
        Ok(iv)
    }

    /// Left endpoint of the cylinder: the embedding value of a finite word.
    pub fn embed(&self, word: &[u32]) -> Result<Interval> {
        let mut iv = Interval::point(0.0);
        for &s in word.iter().rev() {
            let i = self.index(s)?;
            iv = iv
                .mul(&Interval::point(self.ratios[i]))
                .add(&Interval::point(self.offsets[i]));
        }
        Ok(iv)
    }
}

/// `a·x̂ + b·λ·ŷ + c` with `x̂, ŷ` embedding values of finite words.
pub fn affine_eval(
    f: &AffineModelPotential,
    stable_word: &[u32],
    unstable_word: &[u32],
    lambda: f64,
) -> Result<Interval> {
    let x = f.stable.embed(stable_word)?;
    let y = f.unstable.embed(unstable_word)?;
    Ok(f.combine(x, y, lambda))
}

/// Affine potential in the Cantor coordinates of the rectangle: the stable
/// coordinate reads `(a_0, a_{−1}, a_{−2}, …)`, the unstable one
/// `(a_0, a_1, a_2, …)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineModelPotential {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    lambda: f64,
    stable: CantorEmbedding,
    unstable: CantorEmbedding,
    depth: usize,
}

impl AffineModelPotential {
    pub fn new(
        a: f64,
        b: f64,
        c: f64,
        stable: CantorEmbedding,
        unstable: CantorEmbedding,
        depth: usize,
    ) -> Result<Self> {
        if a == 0.0 || b == 0.0 || !a.is_finite() || !b.is_finite() || !c.is_finite() {
            return Err(Error::InvalidPotential(
                "affine model needs finite a, b ≠ 0".into(),
            ));
        }
        Ok(AffineModelPotential {
            a,
            b,
            c,
            lambda: 1.0,
            stable,
            unstable,
            depth,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn stable(&self) -> &CantorEmbedding {
        &self.stable
    }

    pub fn unstable(&self) -> &CantorEmbedding {
        &self.unstable
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        AffineModelPotential {
            lambda,
            ..self.clone()
        }
    }

    pub fn with_depth(&self, depth: usize) -> Self {
        AffineModelPotential {
            depth,
            ..self.clone()
        }
    }

    fn combine(&self, x: Interval, y: Interval, lambda: f64) -> Interval {
        let bl = Interval::point(self.b).mul(&Interval::point(lambda));
        Interval::point(self.a)
            .mul(&x)
            .add(&bl.mul(&y))
            .add(&Interval::point(self.c))
    }

    fn enclose_words(&self, stable_word: &[u32], unstable_word: &[u32]) -> Result<Interval> {
        let x = self.stable.cylinder(stable_word)?;
        let y = self.unstable.cylinder(unstable_word)?;
        Ok(self.combine(x, y, self.lambda))
    }
}

impl Potential for AffineModelPotential {
    fn left_radius(&self) -> usize {
        self.depth
    }

    fn right_radius(&self) -> usize {
        self.depth
    }

    fn eval(&self, window: &[u32]) -> Result<Interval> {
        if window.len() != 2 * self.depth + 1 {
            return Err(Error::InvalidInput(format!(
                "affine window must have length {}",
                2 * self.depth + 1
            )));
        }
        let s: Vec<u32> = window[..=self.depth].iter().rev().copied().collect();
        self.enclose_words(&s, &window[self.depth..])
    }

    fn enclose_partial(&self, word: &[u32], center: usize) -> Option<Interval> {
        if center >= word.len() {
            return None;
        }
        let s: Vec<u32> = word[..=center].iter().rev().copied().collect();
        self.enclose_words(&s, &word[center..]).ok()
    }

    fn refined(&self, extra: usize) -> Option<Arc<dyn Potential>> {
        Some(Arc::new(self.with_depth(self.depth + extra)))
    }

    fn with_lambda(&self, lambda: f64) -> Option<Arc<dyn Potential>> {
        Some(Arc::new(self.scaled(self.lambda * lambda)))
    }
}
