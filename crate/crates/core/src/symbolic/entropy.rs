//! Topological entropy via Collatz–Wielandt bounds on the spectral radius.

use super::sft::Sft;
use crate::error::{Error, Result};
use crate::scc::strongly_connected_components;
use serde::Serialize;

/// Enclosure of `log ρ(B)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntropyBound {
    pub lower: f64,
    pub upper: f64,
}

impl EntropyBound {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, h: f64) -> bool {
        self.lower <= h && h <= self.upper
    }

    pub fn zero() -> Self {
        EntropyBound {
            lower: 0.0,
            upper: 0.0,
        }
    }
}

const MAX_ITERATIONS: usize = 200_000;

/// Bounds on the spectral radius of the 0/1 adjacency matrix given by
/// successor lists. Errors with `EmptySubshift` if the graph has no cycle.
pub fn spectral_radius_bounds(succ: &[Vec<usize>], tol: f64) -> Result<(f64, f64)> {
    let comps = strongly_connected_components(succ);
    let mut best: Option<(f64, f64)> = None;
    let mut comp_of = vec![usize::MAX; succ.len()];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    for (c, comp) in comps.iter().enumerate() {
        let internal: usize = comp
            .iter()
            .map(|&v| succ[v].iter().filter(|&&w| comp_of[w] == c).count())
            .sum();
        if internal == 0 {
            continue;
        }
        let bounds = if internal == comp.len() {
            // strongly connected with out-degree one everywhere: a single cycle
            (1.0, 1.0)
        } else {
            component_bounds(succ, comp, &comp_of, c, tol)?
        };
        best = Some(match best {
            None => bounds,
            Some((l, u)) => (l.max(bounds.0), u.max(bounds.1)),
        });
    }
    best.ok_or(Error::EmptySubshift)
}

fn component_bounds(
    succ: &[Vec<usize>],
    comp: &[usize],
    comp_of: &[usize],
    c: usize,
    tol: f64,
) -> Result<(f64, f64)> {
    let n = comp.len();
    let mut local = std::collections::HashMap::with_capacity(n);
    for (i, &v) in comp.iter().enumerate() {
        local.insert(v, i);
    }
    let adj: Vec<Vec<usize>> = comp
        .iter()
        .map(|&v| {
            succ[v]
                .iter()
                .filter(|&&w| comp_of[w] == c)
                .map(|w| local[w])
                .collect()
        })
        .collect();
    let max_deg = adj.iter().map(Vec::len).max().unwrap_or(0) as f64;
    let slack = 2.0 * (max_deg + 2.0) * f64::EPSILON;

    // Power iteration on A + I, which is primitive for irreducible A.
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let mut last = (0.0, f64::INFINITY);
    for it in 0..MAX_ITERATIONS {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..n {
            let s: f64 = x[i] + adj[i].iter().map(|&j| x[j]).sum::<f64>();
            y[i] = s;
            let r = s / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let la = (lo * (1.0 - slack) - 1.0).max(1.0);
        let ua = hi * (1.0 + slack) - 1.0;
        last = (la, ua);
        if ua.ln() - la.ln() <= 0.5 * tol {
            return Ok(last);
        }
        let m = y.iter().copied().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / m;
            if x[i] < 1e-250 {
                x[i] = 1e-250;
            }
        }
        if it % 64 == 63 && !x.iter().all(|v| v.is_finite()) {
            break;
        }
    }
    Err(Error::EntropyNotConverged {
        lower: last.0.ln(),
        upper: last.1.ln(),
    })
}

/// `log ρ` of a successor-list graph, enclosed with width at most `tol`.
pub fn graph_entropy(succ: &[Vec<usize>], tol: f64) -> Result<EntropyBound> {
    let (l, u) = spectral_radius_bounds(succ, tol)?;
    let lower = if l <= 1.0 { 0.0 } else { l.ln().next_down().next_down().max(0.0) };
    let upper = if u <= 1.0 { 0.0 } else { u.ln().next_up().next_up() };
    Ok(EntropyBound { lower, upper })
}

pub fn entropy(sft: &Sft, tol: f64) -> Result<EntropyBound> {
    graph_entropy(sft.successors(), tol)
}
