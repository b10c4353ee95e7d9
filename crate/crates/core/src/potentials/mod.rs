//! Finite-window potentials: tables, the Gauss potential, perturbations and
//! the affine model, with injectivity diagnostics.

mod affine;
mod diagnostics;
mod gauss;
mod perturb;
mod window;

pub use affine::{affine_eval, AffineModelPotential, CantorEmbedding};
pub use diagnostics::{
    cylinder_representatives, holder_inverse_constant, injectivity_check, HolderReport,
    InjectivityReport,
};
pub use gauss::{cf_enclosure, gauss_window, GaussPotential};
pub use perturb::{perturb, perturb_potential, PerturbationDocument, PerturbationSpec, Perturbed};
pub use window::WindowPotential;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::symbolic::SymbolView;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A real function of the symbols at offsets `−left_radius ..= right_radius`.
pub trait Potential: Send + Sync + fmt::Debug {
    fn left_radius(&self) -> usize;
    fn right_radius(&self) -> usize;

    fn window_len(&self) -> usize {
        self.left_radius() + self.right_radius() + 1
    }

    /// Enclosure of the value at any point whose symbols at offsets
    /// `−left_radius ..= right_radius` are `window`.
    fn eval(&self, window: &[u32]) -> Result<Interval>;

    /// Enclosure valid for every point agreeing with `word`, whose center
    /// sits at `word[center]`, when `word` covers only part of the window.
    fn enclose_partial(&self, _word: &[u32], _center: usize) -> Option<Interval> {
        None
    }

    /// The same potential evaluated `extra` levels deeper, when that makes
    /// sense.
    fn refined(&self, _extra: usize) -> Option<Arc<dyn Potential>> {
        None
    }

    /// The explicit table, for locally constant potentials.
    fn table(&self) -> Option<&WindowPotential> {
        None
    }

    /// The potential composed with `(x, y) ↦ (x, λ y)`, when defined.
    fn with_lambda(&self, _lambda: f64) -> Option<Arc<dyn Potential>> {
        None
    }
}

/// Value of `f` at position `n` of `x`.
pub fn value_at<V: SymbolView + ?Sized>(f: &dyn Potential, x: &V, n: i64) -> Result<Interval> {
    let l = f.left_radius() as i64;
    let r = f.right_radius() as i64;
    let w: Vec<u32> = (n - l..=n + r).map(|i| x.at(i)).collect();
    f.eval(&w)
}

/// JSON form of a potential.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum PotentialSpec {
    Gauss {
        depth: usize,
    },
    Window {
        left: usize,
        right: usize,
        table: BTreeMap<String, f64>,
    },
    Affine {
        a: f64,
        b: f64,
        #[serde(default)]
        c: f64,
        #[serde(default)]
        ratios: Option<BTreeMap<String, f64>>,
        #[serde(default = "default_affine_depth")]
        depth: usize,
    },
}

fn default_affine_depth() -> usize {
    8
}

pub(crate) fn parse_key(key: &str) -> Result<Vec<u32>> {
    key.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidPotential(format!("bad window key {key:?}")))
        })
        .collect()
}

pub(crate) fn format_key(key: &[u32]) -> String {
    key.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

impl PotentialSpec {
    /// `gauss:k` shorthand or a JSON document.
    pub fn parse(text: &str) -> Result<Self> {
        if let Some(k) = text.trim().strip_prefix("gauss:") {
            let depth = k
                .parse()
                .map_err(|_| Error::InvalidPotential(format!("bad Gauss depth {k:?}")))?;
            return Ok(PotentialSpec::Gauss { depth });
        }
        Ok(serde_json::from_str(text)?)
    }

    /// Build the potential; `alphabet` is needed by the affine model.
    pub fn build(&self, alphabet: &[u32]) -> Result<Arc<dyn Potential>> {
        match self {
            PotentialSpec::Gauss { depth } => Ok(Arc::new(GaussPotential::new(*depth)?)),
            PotentialSpec::Window { left, right, table } => {
                let mut t = BTreeMap::new();
                for (k, v) in table {
                    t.insert(parse_key(k)?, *v);
                }
                Ok(Arc::new(WindowPotential::new(*left, *right, t)?))
            }
            PotentialSpec::Affine { .. } => Ok(Arc::new(self.build_affine(alphabet)?)),
        }
    }

    /// The affine model of an `affine` spec.
    pub fn build_affine(&self, alphabet: &[u32]) -> Result<AffineModelPotential> {
        let PotentialSpec::Affine {
            a,
            b,
            c,
            ratios,
            depth,
        } = self
        else {
            return Err(Error::InvalidPotential("not an affine model".into()));
        };
        let emb = match ratios {
            None => CantorEmbedding::default_for(alphabet)?,
            Some(map) => {
                let mut rs = Vec::with_capacity(alphabet.len());
                for s in alphabet {
                    let r = map
                        .get(&s.to_string())
                        .ok_or_else(|| Error::InvalidPotential(format!("no ratio for symbol {s}")))?;
                    rs.push(*r);
                }
                CantorEmbedding::new(alphabet.to_vec(), rs)?
            }
        };
        AffineModelPotential::new(*a, *b, *c, emb.clone(), emb, *depth)
    }
}
