//! Per-cylinder constant perturbations `f + t_a`.

use super::{format_key, parse_key, Potential, WindowPotential};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::symbolic::Sft;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// JSON form: `{"t":{"1":0.1,…},"lambda":1.0}`. Keys are either single
/// symbols or comma-separated centred windows of odd length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationDocument {
    #[serde(default)]
    pub t: BTreeMap<String, f64>,
    #[serde(default = "one")]
    pub lambda: f64,
}

fn one() -> f64 {
    1.0
}

/// Constants `t_w` keyed on the centred `(2r+1)`-window `w` (`r = 0` keys
/// on the center symbol alone), and an optional unstable scale `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationSpec {
    key_radius: usize,
    t: BTreeMap<Vec<u32>, f64>,
    lambda: f64,
}

impl PerturbationSpec {
    pub fn new(key_radius: usize, t: BTreeMap<Vec<u32>, f64>, lambda: f64) -> Result<Self> {
        for (k, v) in &t {
            if k.len() != 2 * key_radius + 1 {
                return Err(Error::InvalidPotential(format!(
                    "perturbation key {} does not have length {}",
                    format_key(k),
                    2 * key_radius + 1
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidPotential("non-finite perturbation".into()));
            }
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidPotential("λ must be positive".into()));
        }
        Ok(PerturbationSpec {
            key_radius,
            t,
            lambda,
        })
    }

    /// Constants keyed on the center symbol.
    pub fn by_symbol(t: impl IntoIterator<Item = (u32, f64)>) -> Result<Self> {
        Self::new(0, t.into_iter().map(|(a, v)| (vec![a], v)).collect(), 1.0)
    }

    pub fn zero() -> Self {
        PerturbationSpec {
            key_radius: 0,
            t: BTreeMap::new(),
            lambda: 1.0,
        }
    }

    /// Independent uniform constants in `[−eps, eps]` on every admissible
    /// centred `(2r+1)`-window of `sft`.
    pub fn random(sft: &Sft, key_radius: usize, eps: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = sft
            .words(2 * key_radius + 1)
            .into_iter()
            .map(|w| (w, rng.gen_range(-eps..=eps)))
            .collect();
        PerturbationSpec {
            key_radius,
            t,
            lambda: 1.0,
        }
    }

    pub fn from_document(doc: &PerturbationDocument) -> Result<Self> {
        let mut t = BTreeMap::new();
        let mut len = None;
        for (k, v) in &doc.t {
            let key = parse_key(k)?;
            if key.len() % 2 == 0 || len.map_or(false, |l| l != key.len()) {
                return Err(Error::InvalidPotential(format!(
                    "perturbation keys must share one odd length, got {k:?}"
                )));
            }
            len = Some(key.len());
            t.insert(key, *v);
        }
        Self::new(len.unwrap_or(1) / 2, t, doc.lambda)
    }

    pub fn to_document(&self) -> PerturbationDocument {
        PerturbationDocument {
            t: self.t.iter().map(|(k, v)| (format_key(k), *v)).collect(),
            lambda: self.lambda,
        }
    }

    pub fn key_radius(&self) -> usize {
        self.key_radius
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn constants(&self) -> &BTreeMap<Vec<u32>, f64> {
        &self.t
    }

    /// `t` for a centred key window; absent keys perturb by zero.
    pub fn t_for(&self, key: &[u32]) -> f64 {
        self.t.get(key).copied().unwrap_or(0.0)
    }

    /// Largest `|t|`.
    pub fn sup_norm(&self) -> f64 {
        self.t.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Check `|t| ≤ eps` and `|λ − 1| ≤ delta`.
    pub fn validate(&self, eps: f64, delta: f64) -> Result<()> {
        if self.sup_norm() > eps {
            return Err(Error::InvalidPotential(format!(
                "perturbation exceeds the bound {eps}"
            )));
        }
        if (self.lambda - 1.0).abs() > delta {
            return Err(Error::InvalidPotential(format!("λ outside [1−{delta}, 1+{delta}]")));
        }
        Ok(())
    }

    /// Pointwise sum of two perturbations with the same key radius.
    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.key_radius != other.key_radius {
            return Err(Error::InvalidPotential(
                "perturbations key on different radii".into(),
            ));
        }
        let mut t = self.t.clone();
        for (k, v) in &other.t {
            *t.entry(k.clone()).or_insert(0.0) += v;
        }
        Self::new(self.key_radius, t, self.lambda * other.lambda)
    }

    fn hull(&self) -> Interval {
        self.t
            .values()
            .fold(Interval::point(0.0), |h, &v| h.hull(&Interval::point(v)))
    }
}

/// Add `t` to each window value of a table; values are rounded to nearest.
pub fn perturb(f: &WindowPotential, p: &PerturbationSpec) -> Result<WindowPotential> {
    let (l, r) = f.radii();
    let kr = p.key_radius;
    if kr > l || kr > r {
        return Err(Error::InvalidPotential(format!(
            "perturbation key radius {kr} exceeds the window radii ({l},{r})"
        )));
    }
    if p.lambda != 1.0 {
        return Err(Error::InvalidPotential(
            "λ scaling applies only to the affine model".into(),
        ));
    }
    let table = f
        .entries()
        .iter()
        .map(|(w, v)| (w.clone(), v + p.t_for(&w[l - kr..=l + kr])))
        .collect();
    WindowPotential::new(l, r, table)
}

/// `f + t` for an arbitrary potential.
#[derive(Clone, Debug)]
pub struct Perturbed {
    base: Arc<dyn Potential>,
    spec: PerturbationSpec,
    hull: Interval,
}

impl Perturbed {
    pub fn new(base: Arc<dyn Potential>, spec: PerturbationSpec) -> Self {
        let hull = spec.hull();
        Perturbed { base, spec, hull }
    }

    pub fn base(&self) -> &Arc<dyn Potential> {
        &self.base
    }

    pub fn spec(&self) -> &PerturbationSpec {
        &self.spec
    }
}

impl Potential for Perturbed {
    fn left_radius(&self) -> usize {
        self.base.left_radius().max(self.spec.key_radius)
    }

    fn right_radius(&self) -> usize {
        self.base.right_radius().max(self.spec.key_radius)
    }

    fn eval(&self, window: &[u32]) -> Result<Interval> {
        if window.len() != self.window_len() {
            return Err(Error::InvalidInput(format!(
                "window must have length {}",
                self.window_len()
            )));
        }
        let c = self.left_radius();
        let (bl, br) = (self.base.left_radius(), self.base.right_radius());
        let kr = self.spec.key_radius;
        let v = self.base.eval(&window[c - bl..=c + br])?;
        Ok(v.add(&Interval::point(self.spec.t_for(&window[c - kr..=c + kr]))))
    }

    fn enclose_partial(&self, word: &[u32], center: usize) -> Option<Interval> {
        let (bl, br) = (self.base.left_radius(), self.base.right_radius());
        let lo = center.saturating_sub(bl);
        let hi = (center + br + 1).min(word.len());
        let sub = &word[lo..hi];
        let base = if sub.len() == bl + br + 1 {
            self.base.eval(sub).ok()?
        } else {
            self.base.enclose_partial(sub, center - lo)?
        };
        let kr = self.spec.key_radius;
        let t = if center >= kr && center + kr < word.len() {
            Interval::point(self.spec.t_for(&word[center - kr..=center + kr]))
        } else {
            self.hull
        };
        Some(base.add(&t))
    }

    fn refined(&self, extra: usize) -> Option<Arc<dyn Potential>> {
        self.base
            .refined(extra)
            .map(|b| Arc::new(Perturbed::new(b, self.spec.clone())) as Arc<dyn Potential>)
    }
}

/// Perturb any potential: tables stay tables, the affine model absorbs `λ`,
/// everything else is wrapped.
pub fn perturb_potential(
    f: Arc<dyn Potential>,
    p: &PerturbationSpec,
) -> Result<Arc<dyn Potential>> {
    let mut f = f;
    let mut p = p.clone();
    if p.lambda != 1.0 {
        f = f.with_lambda(p.lambda).ok_or_else(|| {
            Error::InvalidPotential("λ scaling applies only to the affine model".into())
        })?;
        p.lambda = 1.0;
    }
    if p.t.is_empty() {
        return Ok(f);
    }
    if let Some(t) = f.table() {
        let (l, r) = t.radii();
        if p.key_radius <= l && p.key_radius <= r {
            return Ok(Arc::new(perturb(t, &p)?));
        }
    }
    Ok(Arc::new(Perturbed::new(f, p)))
}
