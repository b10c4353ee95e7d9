//! Minimum of the Markov spectrum, its isolation, and periodic sampling.

use super::bottleneck::{min_bottleneck, second_bottleneck};
use super::graph::WindowGraph;
use super::values::{periodic_markov_value, CycleCertificate};
use super::EngineConfig;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::potentials::Potential;
use crate::symbolic::{PeriodicSequence, Sft, Transitivity};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;
use std::sync::Arc;

/// Lyndon words of length ≤ `max_len` that close up into cycles of `sft`,
/// in lexicographic order. Fails once more than `budget` words have been
/// generated.
pub fn lyndon_cycles(sft: &Sft, max_len: usize, budget: usize) -> Result<Vec<Vec<u32>>> {
    let k = sft.len();
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return Ok(out);
    }
    let mut generated = 0usize;
    let mut w: Vec<usize> = vec![usize::MAX];
    while !w.is_empty() {
        let last = w.len() - 1;
        w[last] = w[last].wrapping_add(1);
        generated += 1;
        if generated > budget {
            return Err(Error::BudgetExceeded {
                what: "periodic orbits",
                limit: budget,
            });
        }
        let ok = (0..w.len()).all(|i| sft.allowed_index(w[i], w[(i + 1) % w.len()]));
        if ok {
            out.push(w.iter().map(|&i| sft.symbol(i)).collect());
        }
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
    }
    Ok(out)
}

/// A sampled periodic orbit and its Markov value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleValue {
    pub word: Vec<u32>,
    pub value: Interval,
}

/// Markov values of all primitive cycles of period ≤ `max_period`, sorted,
/// with identical enclosures merged (the first word is kept).
pub fn periodic_spectrum_sample(
    sft: &Sft,
    f: &dyn Potential,
    max_period: usize,
    budget: usize,
) -> Result<Vec<SampleValue>> {
    if max_period == 0 {
        return Err(Error::InvalidInput("max period must be at least 1".into()));
    }
    let words = lyndon_cycles(sft, max_period, budget)?;
    let mut vals: Vec<SampleValue> = words
        .into_par_iter()
        .map(|word| {
            let x = PeriodicSequence::new(&word)?;
            let (value, _) = periodic_markov_value(&x, f)?;
            Ok(SampleValue { word, value })
        })
        .collect::<Result<Vec<_>>>()?;
    vals.sort_by(|a, b| {
        a.value
            .lo()
            .total_cmp(&b.value.lo())
            .then(a.value.hi().total_cmp(&b.value.hi()))
            .then_with(|| a.word.len().cmp(&b.word.len()))
            .then_with(|| a.word.cmp(&b.word))
    });
    vals.dedup_by(|b, a| a.value == b.value);
    Ok(vals)
}

/// Result of the minimization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    /// Encloses `min M = min L`.
    pub min_value: Interval,
    pub minimizing_cycle: CycleCertificate,
    /// Encloses the least Markov value over all other periodic orbits.
    pub second_value: Option<Interval>,
    pub second_cycle: Option<CycleCertificate>,
    /// `second_value − min_value`, clamped below at 0.
    pub gap: Option<Interval>,
    /// The gap is certainly positive (or no other orbit exists).
    pub isolated: bool,
    /// Number of times the potential was refined to settle the minimizer.
    pub refinements: usize,
    pub graph_nodes: usize,
    pub graph_edges: usize,
}

/// Upper bound on the second smallest cycle value, from short cycles.
fn sample_cap(sft: &Sft, f: &dyn Potential, cfg: &EngineConfig) -> Result<f64> {
    let mut best = [f64::INFINITY; 2];
    let mut count = 0usize;
    for p in 1..=cfg.cap_sample_period {
        let words = match lyndon_cycles(sft, p, cfg.sample_budget) {
            Ok(w) => w,
            Err(Error::BudgetExceeded { .. }) if count >= 2 => break,
            Err(e) => return Err(e),
        };
        if words.len() > cfg.sample_budget / 4 && count >= 2 {
            break;
        }
        let his: Vec<f64> = words
            .par_iter()
            .filter(|w| w.len() == p)
            .map(|w| Ok(periodic_markov_value(&PeriodicSequence::new(w)?, f)?.0.hi()))
            .collect::<Result<Vec<_>>>()?;
        count += his.len();
        for h in his {
            if h < best[0] {
                best = [h, best[0]];
            } else if h < best[1] {
                best[1] = h;
            }
        }
    }
    Ok(best[1])
}

fn attempt(sft: &Sft, f: &dyn Potential, cfg: &EngineConfig) -> Result<SpectrumReport> {
    let cap = sample_cap(sft, f, cfg)?;
    let g = WindowGraph::build(sft, f, cap, cfg.edge_budget)?;
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let lo: Vec<f64> = g.edges().iter().map(|e| e.weight.lo()).collect();
    let hi: Vec<f64> = g.edges().iter().map(|e| e.weight.hi()).collect();
    let b_lo = min_bottleneck(&g, &lo).ok_or(Error::EmptyGraph)?;
    let b_hi = min_bottleneck(&g, &hi).ok_or(Error::EmptyGraph)?;
    let w_lo = PeriodicSequence::new(&b_lo.word)?;
    let w_hi = PeriodicSequence::new(&b_hi.word)?;
    if w_lo != w_hi {
        return Err(Error::Ambiguous(format!(
            "lower and upper bounds select different cycles {:?} and {:?}",
            w_lo.word(),
            w_hi.word()
        )));
    }
    let cert = CycleCertificate::new(w_lo, f)?;
    let min_value = Interval::new(b_lo.value, b_hi.value);
    let on_cycle: HashSet<usize> = b_lo.edges.iter().copied().collect();
    let s_lo = second_bottleneck(&g, &lo, &on_cycle, b_lo.value);
    let s_hi = second_bottleneck(&g, &hi, &on_cycle, b_hi.value);
    let (second_value, second_cycle) = match (s_lo, s_hi) {
        (Some(a), Some(b)) => {
            let c = CycleCertificate::new(PeriodicSequence::new(&b.word)?, f)?;
            (Some(Interval::new(a.value, b.value.max(a.value))), Some(c))
        }
        _ => (None, None),
    };
    let gap = second_value.map(|s| {
        let d = s.sub(&min_value);
        Interval::new(d.lo().max(0.0), d.hi().max(0.0))
    });
    let isolated = gap.map_or(true, |g| g.lo() > 0.0);
    Ok(SpectrumReport {
        min_value,
        minimizing_cycle: cert,
        second_value,
        second_cycle,
        gap,
        isolated,
        refinements: 0,
        graph_nodes: g.node_count(),
        graph_edges: g.edge_count(),
    })
}

/// Minimum of the Markov (and Lagrange) spectrum by minimum bottleneck
/// cycle. Interval weights are searched twice, with lower and with upper
/// bounds; when the two searches disagree the potential is refined, up to
/// `cfg.max_depth`, before ambiguity is reported.
pub fn min_markov(sft: &Sft, f: Arc<dyn Potential>, cfg: &EngineConfig) -> Result<SpectrumReport> {
    if let Transitivity::NotTransitive { .. } = sft.certify_transitive() {
        return Err(Error::InvalidSft("subshift is not transitive".into()));
    }
    let mut f = f;
    let mut refinements = 0;
    loop {
        match attempt(sft, f.as_ref(), cfg) {
            Ok(mut r) => {
                r.refinements = refinements;
                return Ok(r);
            }
            Err(Error::Ambiguous(msg)) => {
                let radius = f.left_radius().max(f.right_radius());
                match f.refined(cfg.refine_step) {
                    Some(g) if radius + cfg.refine_step <= cfg.max_depth => {
                        f = g;
                        refinements += 1;
                    }
                    _ => return Err(Error::Ambiguous(msg)),
                }
            }
            Err(e) => return Err(e),
        }
    }
}

/// Enclosure of the distance from the minimum to the next cycle value.
pub fn isolation_gap(sft: &Sft, f: Arc<dyn Potential>, cfg: &EngineConfig) -> Result<Interval> {
    min_markov(sft, f, cfg)?.gap.ok_or(Error::NoSecondCycle)
}
