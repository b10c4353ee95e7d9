//! Acceptance suite. Prints one line per criterion and exits nonzero if a
//! criterion fails that is not listed in `KNOWN_FAILURES`.

mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectra_core::classical::{classical_lagrange_below_3, lagrange_number, QuadraticSurd};
use spectra_core::engine::{
    entropy_curve, isolation_gap, min_markov, periodic_spectrum_sample, EngineConfig,
};
use spectra_core::potentials::{
    injectivity_check, AffineModelPotential, CantorEmbedding, GaussPotential, PerturbationSpec,
    Perturbed, Potential,
};
use spectra_core::prooflab::{
    lambda_scan, periodic_competitor, power_factor_check_word, CompetitorMode, LambdaGrid,
    ModelParams, PowerFactor, TailDocument, ThetaDocument,
};
use spectra_core::symbolic::{is_primitive, Sft, Word};
use spectra_core::Truth;
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// The fitted decay rate of the λ-scan at `d = 0.2, k = 2` is about 3.6
/// times the predicted one; see the README.
const KNOWN_FAILURES: &[&str] = &["8b"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn sqrt5() -> f64 {
    5f64.sqrt()
}

fn gauss(depth: usize) -> Arc<dyn Potential> {
    Arc::new(GaussPotential::new(depth).unwrap())
}

fn criterion_1() -> Outcome {
    let expected = [
        (1u64, QuadraticSurd::sqrt_of(5).unwrap(), "2.236067977"),
        (2, QuadraticSurd::sqrt_of(8).unwrap(), "2.828427124"),
        (5, QuadraticSurd::from_i64(0, 1, 221, 5).unwrap(), "2.973213749"),
    ];
    let got = classical_lagrange_below_3(5).unwrap();
    let mut ok = got.len() == 3;
    for ((z, v), (ez, ev, dec)) in got.iter().zip(&expected) {
        ok &= z == ez && v == ev && v.decimal(9) == *dec;
    }
    let periods: [&[u64]; 3] = [&[1], &[2], &[2, 2, 1, 1]];
    for (p, (_, ev, _)) in periods.iter().zip(&expected) {
        ok &= lagrange_number(p).unwrap() == *ev;
    }
    let decs: Vec<String> = got.iter().map(|(_, v)| v.decimal(9)).collect();
    outcome(ok, format!("values {decs:?}, CF route agrees: {ok}"))
}

fn criterion_2() -> Outcome {
    let r = min_markov(&Sft::full(2), gauss(20), &EngineConfig::default()).unwrap();
    let v = r.min_value;
    let ok = v.width() < 1e-6 && v.contains(sqrt5()) && r.minimizing_cycle.cycle.word() == [1];
    outcome(
        ok,
        format!(
            "min ∈ [{:.10}, {:.10}], width {:.1e}, cycle {:?}",
            v.lo(),
            v.hi(),
            v.width(),
            r.minimizing_cycle.cycle.word()
        ),
    )
}

fn criterion_3() -> Outcome {
    let g = isolation_gap(&Sft::full(2), gauss(20), &EngineConfig::default()).unwrap();
    let target = 8f64.sqrt() - sqrt5();
    let ok = g.contains(target) && g.width() <= 1e-6;
    outcome(ok, format!("gap ∈ [{:.10}, {:.10}], target {target:.10}", g.lo(), g.hi()))
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=8);
        let succ = random_transitive_succ(&mut rng, n, 0.3);
        let sft = sft_from_succ(&succ);
        let mut weights = BTreeMap::new();
        for (i, s) in succ.iter().enumerate() {
            for &j in s {
                weights.insert((i as u32 + 1, j as u32 + 1), rng.gen_range(0..=20) as f64);
            }
        }
        let f = edge_potential(&sft, &weights);
        let weight = |c: &[u32]| -> f64 {
            (0..c.len())
                .map(|i| weights[&(c[i], c[(i + 1) % c.len()])])
                .fold(f64::NEG_INFINITY, f64::max)
        };
        // oracle: least bottleneck, then shortest, then least rotation
        let best = simple_cycles(&succ)
            .into_iter()
            .map(|c| {
                let w: Vec<u32> = c.iter().map(|&v| v as u32 + 1).collect();
                (weight(&w), w.len(), naive_least_rotation(&w))
            })
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)))
            .unwrap();
        let r = min_markov(&sft, Arc::new(f.clone()), &EngineConfig::default()).unwrap();
        let cert = &r.minimizing_cycle;
        let ok = r.min_value.lo() == best.0
            && r.min_value.hi() == best.0
            && cert.value.lo() == weight(cert.cycle.word())
            && cert.verify(&f).unwrap()
            && cert.cycle.word() == best.2;
        if !ok {
            bad.push(seed);
        }
    }
    outcome(bad.is_empty(), format!("100 graphs, mismatching seeds {bad:?}"))
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let sft = random_transitive_sft(&mut rng, 4);
        let w = rng.gen_range(1..=3);
        let left = rng.gen_range(0..w);
        let f = random_window_potential(&mut rng, &sft, left, w - 1 - left, 12);
        let r = min_markov(&sft, Arc::new(f.clone()), &EngineConfig::default()).unwrap();
        let p = r.minimizing_cycle.cycle.period();
        let sample = periodic_spectrum_sample(&sft, &f, 2 * p, 1 << 20).unwrap();
        let min = sample
            .iter()
            .map(|s| s.value.lo())
            .fold(f64::INFINITY, f64::min);
        if min != r.min_value.lo() || r.min_value.lo() != r.min_value.hi() {
            bad.push(seed);
        }
    }
    outcome(bad.is_empty(), format!("100 potentials, mismatching seeds {bad:?}"))
}

fn criterion_6() -> Outcome {
    let ts: Vec<f64> = (0..201).map(|i| 2.2 + i as f64 * 0.005).collect();
    let pts = entropy_curve(&Sft::full(2), gauss(10).as_ref(), &ts, &EngineConfig::default()).unwrap();
    let bounds: Vec<(f64, f64)> = pts
        .iter()
        .map(|p| p.entropy.map_or((0.0, 0.0), |e| (e.lower, e.upper)))
        .collect();
    let monotone = bounds
        .windows(2)
        .all(|w| w[0].0 <= w[1].0 && w[0].1 <= w[1].1);
    let zero = pts
        .iter()
        .filter(|p| p.t > sqrt5() + 1e-3 && p.t < 8f64.sqrt() - 1e-3)
        .all(|p| p.entropy.map_or(false, |e| e.lower == 0.0 && e.upper == 0.0));
    let empty = pts[0].t == 2.2 && pts[0].entropy.is_none();
    let last = bounds.last().unwrap();
    outcome(
        monotone && zero && empty,
        format!(
            "nondecreasing {monotone}, zero on plateau {zero}, empty at 2.2 {empty}, h(3.2) ∈ [{:.4}, {:.4}]",
            last.0, last.1
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut disagreements = 0;
    let mut violations = 0;
    for _ in 0..1000 {
        let len = rng.gen_range(2..=400usize);
        let m = rng.gen_range(1..=3usize);
        let alpha = rng.gen_range(1..=3u32);
        let mut x: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=alpha)).collect();
        if rng.gen_bool(0.5) {
            // plant a periodic stretch through the middle
            let t = rng.gen_range(1..=8usize);
            let g: Vec<u32> = (0..t).map(|_| rng.gen_range(1..=2)).collect();
            let span = rng.gen_range(0..=len);
            let from = (len - span) / 2;
            for i in 0..span {
                x[from + i] = g[i % t];
            }
        }
        let offset = len / 2;
        let max_t = offset.min(len - offset) / m;
        let w = Word::new(x.clone(), -(offset as i64));
        let got = power_factor_check_word(&w, m, max_t).unwrap();
        let expected = (1..=max_t)
            .find(|&t| naive_power_at(&x, offset, m, t))
            .map(|t| (t, x[offset..offset + t].to_vec()));
        let agree = match (&got, &expected) {
            (PowerFactor::Clean, None) => true,
            (PowerFactor::Violation { t, gamma }, Some((et, eg))) => {
                violations += 1;
                t == et && gamma == eg && is_primitive(gamma)
            }
            _ => false,
        };
        if !agree {
            disagreements += 1;
        }
    }
    let tm = thue_morse(512);
    let tm_clean = (2..=4).all(|m| {
        let w = Word::new(tm.clone(), -256);
        power_factor_check_word(&w, m, 256 / m).unwrap().is_clean()
    });
    let mut planted_ok = 0;
    for trial in 0..100 {
        let m = 1 + trial % 3;
        let t = rng.gen_range(1..=10usize);
        // the unique marker 3 at γ[0] rules out any shorter period
        let mut gamma = vec![3];
        gamma.extend((1..t).map(|_| rng.gen_range(1..=2u32)));
        let half = m * t + rng.gen_range(0..20);
        let mut x: Vec<u32> = (0..2 * half).map(|_| rng.gen_range(1..=2)).collect();
        for i in 0..2 * m * t {
            x[half - m * t + i] = gamma[i % t];
        }
        let w = Word::new(x, -(half as i64));
        let got = power_factor_check_word(&w, m, half / m).unwrap();
        if got == (PowerFactor::Violation { t, gamma: gamma.clone() }) && is_primitive(&gamma) {
            planted_ok += 1;
        }
    }
    outcome(
        disagreements == 0 && tm_clean && planted_ok == 100,
        format!(
            "{disagreements} disagreements over 1000 words ({violations} violations), Thue–Morse clean {tm_clean}, planted {planted_ok}/100"
        ),
    )
}

fn criterion_8a() -> Outcome {
    let sft = Sft::full(2);
    let mut passed = 0;
    for seed in 0..100 {
        let spec = PerturbationSpec::random(&sft, 4, 0.05, seed);
        let f = Perturbed::new(gauss(20), spec);
        if injectivity_check(&f, &sft, 8).unwrap().passed() {
            passed += 1;
        }
    }
    outcome(passed >= 99, format!("{passed}/100 perturbations injective at n = 8"))
}

fn criterion_8b() -> Outcome {
    let sft = Sft::full(2);
    let e = CantorEmbedding::uniform(&[1, 2], 2f64.powi(-10)).unwrap();
    let model = AffineModelPotential::new(1.0, -1.0, 0.0, e.clone(), e, 8).unwrap();
    let grid = LambdaGrid::with_delta(0.01).unwrap();
    let rep = lambda_scan(&model, &sft, &[15, 20, 25, 30, 35], 2, &grid, 1 << 25).unwrap();
    let fitted = rep.fitted_rate.unwrap_or(f64::NAN);
    let ratio = fitted / rep.predicted_rate;
    let fractions: Vec<String> = rep.rows.iter().map(|r| format!("{:.2e}", r.bad_fraction)).collect();
    outcome(
        (0.5..=2.0).contains(&ratio),
        format!(
            "d = {:.3}, fitted rate {fitted:.4} vs (1−2dk)ln2 = {:.4} (ratio {ratio:.2}), fractions {fractions:?}",
            rep.dimension, rep.predicted_rate
        ),
    )
}

fn criterion_9() -> Outcome {
    let sft = Sft::full(2);
    let f = gauss(14);
    let params = ModelParams::new(1.0, 1.0, 0.3, 0.5, 6, 1).unwrap();
    // the period (1,1,2,2) on both sides with one extra 1 inserted ahead
    let doc = ThetaDocument {
        past: TailDocument {
            preperiod: vec![],
            period: vec![2, 2, 1, 1],
        },
        zero: 1,
        future: TailDocument {
            preperiod: vec![1, 2, 2, 1, 1, 2, 2, 1, 1, 1, 2, 2],
            period: vec![1, 1, 2, 2],
        },
    };
    let theta = doc.to_sequence().unwrap();
    let mut lines = Vec::new();
    let mut any = false;
    for mode in [CompetitorMode::CaseI, CompetitorMode::CaseIi] {
        for n in 1..=2 {
            match periodic_competitor(&theta, mode, n, &sft, f.as_ref(), &params, 80) {
                Ok(r) => {
                    let nontrivial = r.competitor.cycle.period() > 1;
                    any |= nontrivial && r.smaller == Truth::True;
                    lines.push(format!(
                        "{mode:?} n={n}: period {:?} value ≤ {:.7} vs θ ≥ {:.7} smaller {:?}",
                        r.competitor.cycle.word(),
                        r.competitor.value.hi(),
                        r.theta_value.lo(),
                        r.smaller
                    ));
                }
                Err(e) => lines.push(format!("{mode:?} n={n}: {e}")),
            }
        }
    }
    outcome(any, lines.join("; "))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("1", Duration::from_secs(1), criterion_1),
        ("2", Duration::from_secs(10), criterion_2),
        ("3", Duration::from_secs(10), criterion_3),
        ("4", Duration::from_secs(30), criterion_4),
        ("5", Duration::from_secs(60), criterion_5),
        ("6", Duration::from_secs(60), criterion_6),
        ("7", Duration::from_secs(30), criterion_7),
        ("8a", Duration::from_secs(120), criterion_8a),
        ("8b", Duration::from_secs(120), criterion_8b),
        ("9", Duration::from_secs(60), criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let pass = o.pass && took <= limit;
        let known = KNOWN_FAILURES.contains(&name);
        let tag = match (pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!(
            "criterion {name}: {tag} [{:.2}s / limit {}s] {}",
            took.as_secs_f64(),
            limit.as_secs(),
            o.detail
        );
        if !pass && !known {
            unexpected.push(name);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
