//! Measure of the perturbation parameters `λ` for which the affine model
//! fails to separate fine cells lying in different coarse cells.

use crate::error::{Error, Result};
use crate::potentials::{AffineModelPotential, CantorEmbedding};
use crate::symbolic::{entropy, Sft};
use rayon::prelude::*;
use serde::Serialize;

/// Uniform grid of `points` parameters on `[1 − δ, 1 + δ]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LambdaGrid {
    pub delta: f64,
    pub points: usize,
}

impl LambdaGrid {
    pub fn new(delta: f64, points: usize) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) || points < 2 {
            return Err(Error::InvalidInput("need 0 < δ < 1 and at least 2 points".into()));
        }
        Ok(LambdaGrid { delta, points })
    }

    pub fn with_delta(delta: f64) -> Result<Self> {
        Self::new(delta, 10_000)
    }

    fn lo(&self) -> f64 {
        1.0 - self.delta
    }

    fn step(&self) -> f64 {
        2.0 * self.delta / (self.points - 1) as f64
    }

    pub fn value(&self, i: usize) -> f64 {
        self.lo() + i as f64 * self.step()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub r: u32,
    pub cells: usize,
    pub pairs: usize,
    /// Lebesgue measure of the bad parameters over `2δ`.
    pub bad_fraction: f64,
    /// Share of grid points that are bad.
    pub grid_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaScanReport {
    pub k: u32,
    pub dimension: f64,
    pub grid: LambdaGrid,
    pub rows: Vec<ScanRow>,
    /// `−slope` of the least-squares line through `(r, ln fraction)` over
    /// rows with a positive fraction.
    pub fitted_rate: Option<f64>,
    /// `(1 − 2dk)·ln 2`.
    pub predicted_rate: f64,
    /// The grid parameter closest to 1 that no resolution flagged.
    pub good_lambda: Option<f64>,
}

/// Dimension proxy `h/(−ln ρ_s) + h/(−ln ρ_u)` with the largest ratios of
/// each embedding and `h` an upper bound for the entropy of `sft`.
pub fn dimension_proxy(sft: &Sft, model: &AffineModelPotential) -> Result<f64> {
    let h = entropy(sft, 1e-9)?.upper;
    let side = |e: &CantorEmbedding| h / -e.max_ratio().ln();
    Ok(side(model.stable()) + side(model.unstable()))
}

/// One-sided cylinders: words `(a_0, x_1, …)` extended until the cylinder
/// length drops to `eps`. `next` lists the symbols allowed after a symbol
/// in reading order.
fn stopping_words(
    e: &CantorEmbedding,
    a0: usize,
    next: &[Vec<usize>],
    symbols: &[u32],
    eps: f64,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut stack = vec![(vec![a0], e.ratio(symbols[a0])?)];
    while let Some((w, len)) = stack.pop() {
        if len <= eps {
            out.push(w);
            if out.len() > budget {
                return Err(Error::BudgetExceeded {
                    what: "scan cells",
                    limit: budget,
                });
            }
            continue;
        }
        let last = *w.last().expect("nonempty");
        for &s in next[last].iter().rev() {
            let mut v = w.clone();
            v.push(s);
            stack.push((v, len * e.ratio(symbols[s])?));
        }
    }
    out.sort();
    Ok(out)
}

/// Index of the coarse word that is a prefix of each fine word.
fn ancestors(fine: &[Vec<usize>], coarse: &[Vec<usize>]) -> Vec<usize> {
    fine.iter()
        .map(|w| {
            coarse
                .iter()
                .position(|c| w.starts_with(c))
                .expect("coarse words partition the fine ones")
        })
        .collect()
}

/// Fine words of one side with what is needed to take differences of
/// cylinder midpoints without cancellation.
struct SideCells {
    words: Vec<Vec<usize>>,
    coarse: Vec<usize>,
    /// `scale[w][c]`: product of the ratios of the first `c` symbols.
    scale: Vec<Vec<f64>>,
    /// `tail_mid[w][c]`: midpoint of the cylinder of the suffix from `c`.
    tail_mid: Vec<Vec<f64>>,
    half_width: Vec<f64>,
}

impl SideCells {
    fn new(e: &CantorEmbedding, symbols: &[u32], words: Vec<Vec<usize>>, coarse: Vec<usize>) -> Result<Self> {
        let mut scale = Vec::with_capacity(words.len());
        let mut tail_mid = Vec::with_capacity(words.len());
        let mut half_width = Vec::with_capacity(words.len());
        for w in &words {
            let syms: Vec<u32> = w.iter().map(|&i| symbols[i]).collect();
            let mut sc = vec![1.0];
            for &x in &syms {
                sc.push(sc.last().expect("nonempty") * e.ratio(x)?);
            }
            half_width.push(0.5 * sc[syms.len()]);
            scale.push(sc);
            tail_mid.push(
                (0..=syms.len())
                    .map(|c| e.cylinder(&syms[c..]).map(|iv| iv.mid()))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(SideCells {
            words,
            coarse,
            scale,
            tail_mid,
            half_width,
        })
    }

    /// Midpoint of cylinder `i` minus midpoint of cylinder `j`.
    fn delta(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (u, v) = (&self.words[i], &self.words[j]);
        let c = u.iter().zip(v).take_while(|(x, y)| x == y).count();
        self.scale[i][c] * (self.tail_mid[i][c] - self.tail_mid[j][c])
    }
}

/// `{λ ∈ [lo, hi] : c·λ < e}` as a closed hull, if nonempty.
fn half_line(c: f64, e: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    let (l, h) = if c > 0.0 {
        (lo, hi.min(e / c))
    } else if c < 0.0 {
        (lo.max(e / c), hi)
    } else if e > 0.0 {
        (lo, hi)
    } else {
        return None;
    };
    (l < h).then_some((l, h))
}

/// Offsets `μ = λ − 1` in `[−δ, δ]` with `|A + Bλ| < H0 + H1·λ`. Working
/// in `μ` keeps intervals far narrower than the spacing of floats near 1.
fn bad_interval(aa: f64, bb: f64, h0: f64, h1: f64, delta: f64) -> Option<(f64, f64)> {
    let (a1, g0) = (aa + bb, h0 + h1);
    let (l1, u1) = half_line(bb - h1, g0 - a1, -delta, delta)?;
    half_line(-bb - h1, g0 + a1, l1, u1)
}

fn scan_one(
    model: &AffineModelPotential,
    sft: &Sft,
    r: u32,
    k: u32,
    grid: &LambdaGrid,
    budget: usize,
) -> Result<(ScanRow, Vec<bool>)> {
    let symbols = sft.alphabet();
    let fwd = sft.successors();
    let mut back = vec![Vec::new(); symbols.len()];
    for (i, s) in fwd.iter().enumerate() {
        for &j in s {
            back[j].push(i);
        }
    }
    let fine = 2f64.powi(-((k * r) as i32));
    let coarse = 2f64.powi(-(((k - 1) * r) as i32));
    let (a, b) = (model.a, model.b);
    let mut bad: Vec<(f64, f64)> = Vec::new();
    let (mut cells_total, mut pairs) = (0usize, 0usize);
    for a0 in 0..symbols.len() {
        let side = |e: &CantorEmbedding, next: &[Vec<usize>]| -> Result<SideCells> {
            let f = stopping_words(e, a0, next, symbols, fine, budget)?;
            let c = stopping_words(e, a0, next, symbols, coarse, budget)?;
            let anc = ancestors(&f, &c);
            SideCells::new(e, symbols, f, anc)
        };
        let st = side(model.stable(), &back)?;
        let un = side(model.unstable(), fwd)?;
        let (ns, nu) = (st.words.len(), un.words.len());
        let n_cells = ns * nu;
        if n_cells > budget {
            return Err(Error::BudgetExceeded {
                what: "scan cells",
                limit: budget,
            });
        }
        cells_total += n_cells;
        // images a·x + bλ·y + c of P and Q are closer than `fine` when
        // |A + Bλ| < H0 + H1·λ
        let marks: Vec<(usize, Vec<(f64, f64)>)> = (0..n_cells)
            .into_par_iter()
            .map(|p| {
                let (ps, pu) = (p / nu, p % nu);
                let mut out = Vec::new();
                let mut count = 0;
                for q in p + 1..n_cells {
                    let (qs, qu) = (q / nu, q % nu);
                    if st.coarse[ps] == st.coarse[qs] && un.coarse[pu] == un.coarse[qu] {
                        continue;
                    }
                    count += 1;
                    let aa = a * st.delta(ps, qs);
                    let bb = b * un.delta(pu, qu);
                    let h0 = fine + a.abs() * (st.half_width[ps] + st.half_width[qs]);
                    let h1 = b.abs() * (un.half_width[pu] + un.half_width[qu]);
                    if let Some(iv) = bad_interval(aa, bb, h0, h1, grid.delta) {
                        out.push(iv);
                    }
                }
                (count, out)
            })
            .collect();
        for (count, out) in marks {
            pairs += count;
            bad.extend(out);
        }
    }
    bad.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut measure = 0.0;
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (l, h) in bad {
        match merged.last_mut() {
            Some(last) if l <= last.1 => last.1 = last.1.max(h),
            _ => merged.push((l, h)),
        }
    }
    let mut flagged = vec![false; grid.points];
    for &(l, h) in &merged {
        measure += h - l;
        let first = ((l + grid.delta) / grid.step()).ceil().max(0.0) as usize;
        let last = (((h + grid.delta) / grid.step()).floor() as usize).min(grid.points - 1);
        for f in flagged.iter_mut().take(last + 1).skip(first) {
            *f = true;
        }
    }
    let row = ScanRow {
        r,
        cells: cells_total,
        pairs,
        bad_fraction: measure / (2.0 * grid.delta),
        grid_fraction: flagged.iter().filter(|&&f| f).count() as f64 / grid.points as f64,
    };
    Ok((row, flagged))
}

/// Bad-parameter fractions for each `r`, with a fitted exponential rate.
/// Fails if the dimension proxy is not below `1/(2k)`.
pub fn lambda_scan(
    model: &AffineModelPotential,
    sft: &Sft,
    r_values: &[u32],
    k: u32,
    grid: &LambdaGrid,
    budget: usize,
) -> Result<LambdaScanReport> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be at least 2".into()));
    }
    let d = dimension_proxy(sft, model)?;
    let bound = 1.0 / (2.0 * k as f64);
    if d >= bound {
        return Err(Error::DimensionTooLarge { d, bound });
    }
    let mut rows = Vec::with_capacity(r_values.len());
    let mut ever = vec![false; grid.points];
    for &r in r_values {
        let (row, flagged) = scan_one(model, sft, r, k, grid, budget)?;
        for (e, f) in ever.iter_mut().zip(flagged) {
            *e |= f;
        }
        rows.push(row);
    }
    let good_lambda = (0..grid.points)
        .filter(|&i| !ever[i])
        .map(|i| grid.value(i))
        .min_by(|x, y| (x - 1.0).abs().total_cmp(&(y - 1.0).abs()));
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|row| row.bad_fraction > 0.0)
        .map(|row| (row.r as f64, row.bad_fraction.ln()))
        .collect();
    let fitted_rate = (pts.len() >= 2).then(|| {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        -sxy / sxx
    });
    Ok(LambdaScanReport {
        k,
        dimension: d,
        grid: *grid,
        rows,
        fitted_rate,
        predicted_rate: (1.0 - 2.0 * d * k as f64) * std::f64::consts::LN_2,
        good_lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::holder_inverse_constant;

    fn model(ratio: f64, alphabet: &[u32]) -> AffineModelPotential {
        let e = CantorEmbedding::uniform(alphabet, ratio).unwrap();
        AffineModelPotential::new(1.0, -1.0, 0.0, e.clone(), e, 6).unwrap()
    }

    #[test]
    fn single_cylinder_has_no_pairs() {
        let s = Sft::full(1);
        let g = LambdaGrid::with_delta(0.1).unwrap();
        let rep = lambda_scan(&model(0.5, &[1]), &s, &[5, 10, 20], 2, &g, 1 << 20).unwrap();
        assert!(rep.rows.iter().all(|r| r.pairs == 0 && r.bad_fraction == 0.0));
        assert_eq!(rep.fitted_rate, None);
        assert!((rep.good_lambda.unwrap() - 1.0).abs() <= g.step());
    }

    #[test]
    fn dimension_bound_is_enforced() {
        let s = Sft::full(2);
        let g = LambdaGrid::with_delta(0.1).unwrap();
        let err = lambda_scan(&model(0.25, &[1, 2]), &s, &[5], 2, &g, 1 << 20).unwrap_err();
        assert!(matches!(err, Error::DimensionTooLarge { .. }));
    }

    #[test]
    fn thin_model_decays_near_the_predicted_rate() {
        // d = 0.1, k = 2
        let s = Sft::full(2);
        let g = LambdaGrid::with_delta(0.01).unwrap();
        let m = model(2f64.powi(-20), &[1, 2]);
        let rep = lambda_scan(&m, &s, &[30, 40, 50, 60], 2, &g, 1 << 20).unwrap();
        assert!((rep.dimension - 0.1).abs() < 1e-9);
        for w in rep.rows.windows(2) {
            assert!(w[1].bad_fraction <= w[0].bad_fraction);
        }
        let ratio = rep.fitted_rate.unwrap() / rep.predicted_rate;
        assert!((0.5..=2.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn surviving_parameter_separates_cylinders() {
        let s = Sft::full(2);
        let g = LambdaGrid::with_delta(0.01).unwrap();
        let m = model(2f64.powi(-10), &[1, 2]);
        let rep = lambda_scan(&m, &s, &[15, 20, 25], 2, &g, 1 << 20).unwrap();
        let lambda = rep.good_lambda.unwrap();
        let h = holder_inverse_constant(&m.scaled(lambda), &s, 3, 2).unwrap();
        assert!(h.c > 0.0);
    }
}
