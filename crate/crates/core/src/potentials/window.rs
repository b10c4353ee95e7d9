//! Explicit window tables.

use super::{format_key, Potential};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::symbolic::Sft;
use std::collections::BTreeMap;

/// Locally constant potential given by a table on `(left+right+1)`-words.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowPotential {
    left: usize,
    right: usize,
    table: BTreeMap<Vec<u32>, f64>,
}

impl WindowPotential {
    pub fn new(left: usize, right: usize, table: BTreeMap<Vec<u32>, f64>) -> Result<Self> {
        let len = left + right + 1;
        for (k, v) in &table {
            if k.len() != len {
                return Err(Error::InvalidPotential(format!(
                    "window {} has length {}, expected {len}",
                    format_key(k),
                    k.len()
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidPotential(format!(
                    "window {} has a non-finite value",
                    format_key(k)
                )));
            }
        }
        Ok(WindowPotential { left, right, table })
    }

    /// Tabulate `f` on every admissible window of `sft`.
    pub fn from_fn(
        sft: &Sft,
        left: usize,
        right: usize,
        mut f: impl FnMut(&[u32]) -> f64,
    ) -> Result<Self> {
        let table = sft
            .words(left + right + 1)
            .into_iter()
            .map(|w| {
                let v = f(&w);
                (w, v)
            })
            .collect();
        Self::new(left, right, table)
    }

    pub fn constant(sft: &Sft, c: f64) -> Result<Self> {
        Self::from_fn(sft, 0, 0, |_| c)
    }

    pub fn get(&self, window: &[u32]) -> Option<f64> {
        self.table.get(window).copied()
    }

    pub fn entries(&self) -> &BTreeMap<Vec<u32>, f64> {
        &self.table
    }

    pub fn radii(&self) -> (usize, usize) {
        (self.left, self.right)
    }

    /// Whether every admissible window of `sft` has a value.
    pub fn is_total_on(&self, sft: &Sft) -> bool {
        sft.words(self.left + self.right + 1)
            .iter()
            .all(|w| self.table.contains_key(w))
    }

    pub fn to_spec(&self) -> super::PotentialSpec {
        super::PotentialSpec::Window {
            left: self.left,
            right: self.right,
            table: self
                .table
                .iter()
                .map(|(k, v)| (format_key(k), *v))
                .collect(),
        }
    }
}

impl Potential for WindowPotential {
    fn left_radius(&self) -> usize {
        self.left
    }

    fn right_radius(&self) -> usize {
        self.right
    }

    fn eval(&self, window: &[u32]) -> Result<Interval> {
        self.get(window).map(Interval::point).ok_or_else(|| {
            Error::InvalidPotential(format!("no value for window {}", format_key(window)))
        })
    }

    fn table(&self) -> Option<&WindowPotential> {
        Some(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_total_and_rejects_bad_keys() {
        let s = Sft::golden_mean();
        let f = WindowPotential::from_fn(&s, 1, 0, |w| w.iter().sum::<u32>() as f64).unwrap();
        assert!(f.is_total_on(&s));
        assert_eq!(f.eval(&[2, 1]).unwrap(), Interval::point(3.0));
        assert!(f.eval(&[2, 2]).is_err());
        let mut t = BTreeMap::new();
        t.insert(vec![1, 1], 0.0);
        assert!(WindowPotential::new(0, 0, t).is_err());
    }
}
