#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use spectra_core::potentials::WindowPotential;
use spectra_core::symbolic::Sft;
use std::collections::BTreeMap;

/// Strongly connected random graph on `n` nodes: a random Hamiltonian
/// cycle plus independent extra edges.
pub fn random_transitive_succ(rng: &mut impl Rng, n: usize, p_extra: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        adj[order[i]][order[(i + 1) % n]] = true;
    }
    for row in adj.iter_mut() {
        for e in row.iter_mut() {
            if rng.gen_bool(p_extra) {
                *e = true;
            }
        }
    }
    adj.iter()
        .map(|row| (0..n).filter(|&j| row[j]).collect())
        .collect()
}

pub fn sft_from_succ(succ: &[Vec<usize>]) -> Sft {
    let n = succ.len();
    let alphabet: Vec<u32> = (1..=n as u32).collect();
    Sft::from_successors(alphabet, succ.to_vec()).expect("transitive graph")
}

pub fn random_transitive_sft(rng: &mut impl Rng, max_symbols: usize) -> Sft {
    let n = rng.gen_range(1..=max_symbols);
    sft_from_succ(&random_transitive_succ(rng, n, 0.35))
}

/// Window potential with small integer values.
pub fn random_window_potential(rng: &mut impl Rng, sft: &Sft, left: usize, right: usize, max: u32) -> WindowPotential {
    WindowPotential::from_fn(sft, left, right, |_| rng.gen_range(0..=max) as f64).expect("table")
}

/// Edge-weighted potential: the value at position 0 is the weight of the
/// edge `(x_0, x_1)`.
pub fn edge_potential(sft: &Sft, weights: &BTreeMap<(u32, u32), f64>) -> WindowPotential {
    WindowPotential::from_fn(sft, 0, 1, |w| weights[&(w[0], w[1])]).expect("table")
}

/// All simple cycles as node lists starting at their least node.
pub fn simple_cycles(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    fn go(
        succ: &[Vec<usize>],
        start: usize,
        path: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        for &w in &succ[v] {
            if w == start {
                out.push(path.clone());
            } else if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                go(succ, start, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; succ.len()];
    for s in 0..succ.len() {
        on[s] = true;
        go(succ, s, &mut vec![s], &mut on, &mut out);
        on[s] = false;
    }
    out
}

/// Least rotation by direct comparison of all rotations.
pub fn naive_least_rotation(w: &[u32]) -> Vec<u32> {
    (0..w.len())
        .map(|i| [&w[i..], &w[..i]].concat())
        .min()
        .unwrap_or_default()
}

/// `x` restricted to `[lo, hi)` is `γ^{2m}` with `|γ| = t`, checked by
/// building the power and comparing strings.
pub fn naive_power_at(x: &[u32], offset: usize, m: usize, t: usize) -> bool {
    let lo = offset - m * t;
    let gamma = &x[lo..lo + t];
    let power: Vec<u32> = gamma.iter().copied().cycle().take(2 * m * t).collect();
    x[lo..lo + 2 * m * t] == power[..]
}

/// Prefix of the Thue–Morse word on `{1, 2}`.
pub fn thue_morse(len: usize) -> Vec<u32> {
    (0..len).map(|i: usize| 1 + (i.count_ones() % 2)).collect()
}
