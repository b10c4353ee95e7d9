//! Sublevel sets `{x : M(x) ≤ t}` as subshifts and their entropy.

use super::graph::WindowGraph;
use super::EngineConfig;
use crate::error::{Error, Result};
use crate::potentials::Potential;
use crate::symbolic::{graph_entropy, EntropyBound, Sft};
use serde::Serialize;
use std::collections::{HashMap, HashSet};

/// Inner and outer approximations of a sublevel set. Every sequence with
/// `M(x) ≤ t` is a path in `outer`; every path in `inner` has `M(x) ≤ t`.
#[derive(Clone, Debug)]
pub struct Sublevel {
    pub t: f64,
    pub outer: WindowGraph,
    pub inner: WindowGraph,
}

impl Sublevel {
    /// Entropy enclosure, `None` when the sublevel set is empty.
    pub fn entropy(&self, tol: f64) -> Result<Option<EntropyBound>> {
        if self.outer.is_empty() {
            return Ok(None);
        }
        let upper = graph_entropy(&self.outer.successors(), tol)?.upper;
        let lower = if self.inner.is_empty() {
            0.0
        } else {
            graph_entropy(&self.inner.successors(), tol)?.lower
        };
        Ok(Some(EntropyBound {
            lower: lower.max(0.0),
            upper,
        }))
    }
}

/// Sublevel set at level `t`.
pub fn sublevel(sft: &Sft, f: &dyn Potential, t: f64, cfg: &EngineConfig) -> Result<Sublevel> {
    let g = WindowGraph::build(sft, f, t, cfg.edge_budget)?;
    Ok(split(&g, t))
}

fn split(g: &WindowGraph, t: f64) -> Sublevel {
    Sublevel {
        t,
        outer: g.filter(|e| e.weight.lo() <= t),
        inner: g.filter(|e| e.weight.hi() <= t),
    }
}

/// One point of the entropy curve `t ↦ h(Σ_t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub t: f64,
    /// `None` when the sublevel set is empty.
    pub entropy: Option<EntropyBound>,
    pub node_count: usize,
    pub edge_count: usize,
}

/// Entropy of the sublevel sets at each `t` (sorted ascending internally).
/// Bounds are tightened using monotonicity in `t`.
pub fn entropy_curve(
    sft: &Sft,
    f: &dyn Potential,
    ts: &[f64],
    cfg: &EngineConfig,
) -> Result<Vec<CurvePoint>> {
    if ts.iter().any(|t| t.is_nan()) {
        return Err(Error::InvalidInput("NaN threshold".into()));
    }
    let mut ts = ts.to_vec();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let Some(&top) = ts.last() else {
        return Ok(Vec::new());
    };
    let g = WindowGraph::build(sft, f, top, cfg.edge_budget)?;
    let mut pts = Vec::with_capacity(ts.len());
    let mut memo_outer = HashMap::new();
    let mut memo_inner = HashMap::new();
    let entropy_of = |memo: &mut HashMap<usize, Option<EntropyBound>>,
                      mask: &[bool]|
     -> Result<Option<EntropyBound>> {
        // sublevel edge sets are nested, so the edge count identifies the set
        let k = mask.iter().filter(|&&a| a).count();
        if k == 0 {
            return Ok(None);
        }
        if let Some(e) = memo.get(&k) {
            return Ok(*e);
        }
        let e = graph_entropy(&g.masked_successors(mask), cfg.tol).map(Some)?;
        memo.insert(k, e);
        Ok(e)
    };
    for &t in &ts {
        let outer = g.core_mask(|e| e.weight.lo() <= t);
        let inner = g.core_mask(|e| e.weight.hi() <= t);
        let entropy = match entropy_of(&mut memo_outer, &outer)? {
            None => None,
            Some(up) => Some(EntropyBound {
                lower: entropy_of(&mut memo_inner, &inner)?.map_or(0.0, |e| e.lower.max(0.0)),
                upper: up.upper,
            }),
        };
        let mut nodes = HashSet::new();
        let mut edge_count = 0;
        for (e, _) in g.edges().iter().zip(&outer).filter(|(_, a)| **a) {
            nodes.insert(e.from);
            edge_count += 1;
        }
        pts.push(CurvePoint {
            t,
            entropy,
            node_count: nodes.len(),
            edge_count,
        });
    }
    let mut lower = 0.0f64;
    for p in pts.iter_mut() {
        if let Some(e) = p.entropy.as_mut() {
            lower = lower.max(e.lower);
            e.lower = lower;
        }
    }
    let mut upper = f64::INFINITY;
    for p in pts.iter_mut().rev() {
        if let Some(e) = p.entropy.as_mut() {
            upper = upper.min(e.upper);
            e.upper = upper;
        }
    }
    Ok(pts)
}

/// CSV with columns `t,entropy_lower,entropy_upper,node_count,edge_count`.
/// Empty sublevel sets have empty entropy fields.
pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut s = String::from("t,entropy_lower,entropy_upper,node_count,edge_count\n");
    for p in points {
        let (lo, hi) = match p.entropy {
            Some(e) => (e.lower.to_string(), e.upper.to_string()),
            None => (String::new(), String::new()),
        };
        s.push_str(&format!("{},{},{},{},{}\n", p.t, lo, hi, p.node_count, p.edge_count));
    }
    s
}

/// Edge shift of a window graph as a subshift whose symbols are edge
/// indices.
pub fn to_sft(g: &WindowGraph) -> Result<Sft> {
    let n = g.edge_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let succ = g.edges().iter().map(|e| g.out_edges(e.to).to_vec()).collect();
    Sft::from_successors((0..n as u32).collect(), succ)
}
