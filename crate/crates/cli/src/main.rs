//! `spectra`: command-line front end for spectra-core.

mod config;
mod plot;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{load_params, load_potential, load_potential_spec, load_sft, load_theta, parse_list};
use serde::Serialize;
use serde_json::json;
use spectra_core::classical::{
    classical_lagrange_below_3, lagrange_with_argmax, markov_triples, ContinuedFraction, QuadraticSurd,
};
use spectra_core::engine::{self, EngineConfig};
use spectra_core::json::to_exact_string;
use spectra_core::potentials::{
    holder_inverse_constant, injectivity_check, PerturbationSpec, Perturbed, Potential,
};
use spectra_core::prooflab::{
    self, CellModel, CompetitorMode, LambdaGrid, PowerFactor,
};
use spectra_core::symbolic::Sft;
use spectra_core::{Error, Result};
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "spectra", version, about = "Lagrange and Markov spectra of subshifts")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Interval width tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for randomized experiments.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Decimal places in emitted numbers.
    #[arg(long, global = true, default_value_t = 12)]
    digits: usize,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Args)]
struct Model {
    /// `full2`, `goldenmean`, `fullN:k` or a JSON file.
    #[arg(long, default_value = "full2")]
    sft: String,
    /// `gauss:k`, inline JSON or a JSON file.
    #[arg(long, default_value = "gauss:10")]
    potential: String,
}

#[derive(Subcommand)]
enum Command {
    /// Value of an eventually periodic continued fraction.
    Cf {
        #[arg(long, default_value = "")]
        preperiod: String,
        #[arg(long)]
        period: String,
        /// Number of convergents to list.
        #[arg(long, default_value_t = 0)]
        convergents: usize,
    },
    /// Markov triples up to a bound, with their spectrum values.
    Triples {
        #[arg(long)]
        zmax: u64,
    },
    /// Lagrange value of a periodic continued fraction.
    Lagrange {
        #[arg(long)]
        period: String,
    },
    /// Minimum of the Markov spectrum and its isolation gap.
    Min {
        #[command(flatten)]
        model: Model,
        #[arg(long, value_enum, default_value_t = Report::Json)]
        report: Report,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Entropy of sublevel sets over a threshold grid.
    SublevelScan {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long)]
        csv: Option<String>,
        #[arg(long)]
        png: Option<String>,
    },
    /// Markov values of all periodic orbits up to a period.
    Sample {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        max_period: usize,
        #[arg(long)]
        csv: Option<String>,
        #[arg(long)]
        png: Option<String>,
    },
    /// Injectivity and inverse Hölder diagnostics, optionally after a
    /// seeded random perturbation.
    Diagnose {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Size of the random perturbation; 0 disables it.
        #[arg(long, default_value_t = 0.0)]
        perturb: f64,
        #[arg(long, default_value_t = 0)]
        key_radius: usize,
    },
    /// Proof-mechanism analyses of a kneading sequence.
    #[command(subcommand)]
    Prooflab(Lab),
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Json,
    Summary,
}

#[derive(Args)]
struct LabInput {
    #[command(flatten)]
    model: Model,
    /// Kneading sequence file.
    #[arg(long)]
    theta: String,
    /// Model parameter file.
    #[arg(long)]
    params: String,
}

#[derive(Subcommand)]
enum Lab {
    /// Record chain and per-position flags.
    Records {
        #[command(flatten)]
        input: LabInput,
        #[arg(long, default_value_t = 200)]
        horizon: i64,
    },
    /// Basic and extended cell of a happy index.
    Cells {
        #[command(flatten)]
        input: LabInput,
        #[arg(long)]
        k: i64,
        /// Uniform embedding ratio; defaults to the affine model's or 0.4.
        #[arg(long)]
        ratio: Option<f64>,
    },
    /// Search for `γ^{2m}` factors centred at positions in a range.
    Claim {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 64)]
        max_t: usize,
        #[arg(long, default_value_t = 0)]
        lo: i64,
        #[arg(long, default_value_t = 1)]
        hi: i64,
    },
    /// Positions whose neighbourhood is not a factor of the periodic word.
    Strange {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 0)]
        lo: i64,
        #[arg(long, default_value_t = 100)]
        hi: i64,
    },
    /// Periodic competitor built from a record.
    Compete {
        #[command(flatten)]
        input: LabInput,
        #[arg(long, value_enum, default_value_t = Mode::CaseI)]
        mode: Mode,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        horizon: i64,
    },
    /// Measure of bad perturbation parameters against resolution.
    LambdaScan {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value = "15,20,25")]
        r: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        #[arg(long, default_value_t = 1 << 20)]
        budget: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    CaseI,
    CaseIi,
}

struct Ctx {
    tol: f64,
    seed: u64,
    digits: usize,
    out: Option<String>,
}

impl Ctx {
    fn engine(&self) -> EngineConfig {
        EngineConfig {
            tol: self.tol,
            ..EngineConfig::default()
        }
    }

    fn emit<T: Serialize + ?Sized>(&self, value: &T) -> Result<()> {
        let text = to_exact_string(value, self.digits)?;
        match &self.out {
            Some(path) => write_file(path, &text),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| Error::InvalidInput(format!("cannot write output: {e}")))
            }
        }
    }
}

fn write_file(path: &str, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}")))
}

fn load_model(m: &Model) -> Result<(Sft, Arc<dyn Potential>)> {
    let sft = load_sft(&m.sft)?;
    let f = load_potential(&m.potential, &sft)?;
    Ok((sft, f))
}

fn surd_json(x: &QuadraticSurd) -> serde_json::Value {
    serde_json::to_value(x).unwrap_or(serde_json::Value::Null)
}

fn run(cli: Cli) -> Result<()> {
    let ctx = Ctx {
        tol: cli.global.tol,
        seed: cli.global.seed,
        digits: cli.global.digits,
        out: cli.global.out,
    };
    if !(ctx.tol > 0.0) {
        return Err(Error::InvalidInput("--tol must be positive".into()));
    }
    match cli.command {
        Command::Cf {
            preperiod,
            period,
            convergents,
        } => {
            let cf = ContinuedFraction::new(parse_list(&preperiod)?, parse_list(&period)?)?;
            let value = cf.value()?;
            let conv: Vec<_> = spectra_core::classical::convergents(&cf, convergents)
                .into_iter()
                .map(|(p, q)| json!([p.to_string(), q.to_string()]))
                .collect();
            ctx.emit(&json!({"cf": {
                "preperiod": parse_list::<u64>(&preperiod)?,
                "period": parse_list::<u64>(&period)?,
                "value": surd_json(&value),
                "convergents": conv,
            }}))
        }
        Command::Triples { zmax } => {
            let triples: Vec<[u64; 3]> = markov_triples(zmax).iter().map(|t| [t.x, t.y, t.z]).collect();
            let values: Vec<_> = classical_lagrange_below_3(zmax)?
                .iter()
                .map(|(z, v)| json!({"z": z, "value": surd_json(v)}))
                .collect();
            ctx.emit(&json!({"triples": triples, "values": values}))
        }
        Command::Lagrange { period } => {
            let period: Vec<u64> = parse_list(&period)?;
            let (value, argmax) = lagrange_with_argmax(&period)?;
            ctx.emit(&json!({"lagrange": {
                "period": period,
                "value": surd_json(&value),
                "argmax": argmax,
            }}))
        }
        Command::Min {
            model,
            report,
            max_depth,
            budget,
        } => {
            let (sft, f) = load_model(&model)?;
            let mut cfg = ctx.engine();
            if let Some(d) = max_depth {
                cfg.max_depth = d;
            }
            if let Some(b) = budget {
                cfg.edge_budget = b;
            }
            let r = engine::min_markov(&sft, f, &cfg)?;
            match report {
                Report::Json => ctx.emit(&json!({"min": r})),
                Report::Summary => ctx.emit(&json!({"min": {
                    "value": r.min_value,
                    "cycle": r.minimizing_cycle.cycle.word(),
                    "gap": r.gap,
                    "isolated": r.isolated,
                }})),
            }
        }
        Command::SublevelScan {
            model,
            from,
            to,
            steps,
            csv,
            png,
        } => {
            if steps < 2 || !(from < to) {
                return Err(Error::InvalidInput("need --from < --to and --steps ≥ 2".into()));
            }
            let (sft, f) = load_model(&model)?;
            let ts: Vec<f64> = (0..steps)
                .map(|i| from + (to - from) * i as f64 / (steps - 1) as f64)
                .collect();
            let points = engine::entropy_curve(&sft, f.as_ref(), &ts, &ctx.engine())?;
            let text = engine::curve_csv(&points);
            if let Some(path) = &csv {
                write_file(path, &text)?;
            }
            if let Some(path) = &png {
                let lower = plot::columns(&text, "t", "entropy_lower")?;
                let upper = plot::columns(&text, "t", "entropy_upper")?;
                plot::save(&plot::render(&[lower, upper], plot::Style::Line), path)?;
            }
            ctx.emit(&json!({"sublevel_scan": points}))
        }
        Command::Sample {
            model,
            max_period,
            csv,
            png,
        } => {
            let (sft, f) = load_model(&model)?;
            let cfg = ctx.engine();
            let sample = engine::periodic_spectrum_sample(&sft, f.as_ref(), max_period, cfg.sample_budget)?;
            let mut text = String::from("index,period,word,lower,upper\n");
            for (i, s) in sample.iter().enumerate() {
                let word: Vec<String> = s.word.iter().map(u32::to_string).collect();
                text.push_str(&format!(
                    "{i},{},{},{:e},{:e}\n",
                    s.word.len(),
                    word.join(" "),
                    s.value.lo(),
                    s.value.hi()
                ));
            }
            if let Some(path) = &csv {
                write_file(path, &text)?;
            }
            if let Some(path) = &png {
                let pts = plot::columns(&text, "period", "lower")?;
                plot::save(&plot::render(&[pts], plot::Style::Scatter), path)?;
            }
            ctx.emit(&json!({"sample": sample}))
        }
        Command::Diagnose {
            model,
            n,
            k,
            perturb,
            key_radius,
        } => {
            let (sft, base) = load_model(&model)?;
            let (f, spec): (Arc<dyn Potential>, _) = if perturb > 0.0 {
                let spec = PerturbationSpec::random(&sft, key_radius, perturb, ctx.seed);
                (Arc::new(Perturbed::new(base, spec.clone())), Some(spec.to_document()))
            } else {
                (base, None)
            };
            let injectivity = injectivity_check(f.as_ref(), &sft, n)?;
            let holder = holder_inverse_constant(f.as_ref(), &sft, n, k).map_err(|e| e.to_string());
            ctx.emit(&json!({"diagnose": {
                "seed": ctx.seed,
                "perturbation": spec,
                "injectivity": injectivity,
                "holder": match holder {
                    Ok(h) => json!(h),
                    Err(e) => json!({"error": e}),
                },
            }}))
        }
        Command::Prooflab(lab) => run_lab(&ctx, lab),
    }
}

fn lab_input(i: &LabInput) -> Result<(Sft, Arc<dyn Potential>, spectra_core::symbolic::BiSequence, prooflab::ModelParams)> {
    let (sft, f) = load_model(&i.model)?;
    let theta = load_theta(&i.theta)?;
    if !theta.is_admissible(&sft)? {
        return Err(Error::Inadmissible("kneading sequence".into()));
    }
    Ok((sft, f, theta, load_params(&i.params)?))
}

fn run_lab(ctx: &Ctx, lab: Lab) -> Result<()> {
    match lab {
        Lab::Records { input, horizon } => {
            let (_, f, theta, params) = lab_input(&input)?;
            let r = prooflab::records(&theta, f.as_ref(), &params, horizon)?;
            ctx.emit(&json!({"records": r}))
        }
        Lab::Cells { input, k, ratio } => {
            let (sft, f, theta, params) = lab_input(&input)?;
            let spec = load_potential_spec(&input.model.potential)?;
            let model = match (ratio, spec.build_affine(sft.alphabet())) {
                (Some(r), _) => CellModel::uniform(sft.alphabet(), r)?,
                (None, Ok(a)) => CellModel::from_affine(&a),
                (None, Err(_)) => {
                    let e = spectra_core::potentials::CantorEmbedding::default_for(sft.alphabet())?;
                    CellModel::new(e.clone(), e)
                }
            };
            let c = prooflab::cells(&theta, k, f.as_ref(), &params, &model)?;
            ctx.emit(&json!({"cells": c}))
        }
        Lab::Claim {
            theta,
            m,
            max_t,
            lo,
            hi,
        } => {
            let theta = load_theta(&theta)?;
            let mut violations = Vec::new();
            for k in lo..hi {
                if let PowerFactor::Violation { t, gamma } =
                    prooflab::power_factor_check(&theta.shift(k), m, max_t)
                {
                    violations.push(json!({"k": k, "t": t, "gamma": gamma}));
                }
            }
            ctx.emit(&json!({"claim": {
                "m": m, "max_t": max_t, "lo": lo, "hi": hi,
                "clean": violations.is_empty(),
                "violations": violations,
            }}))
        }
        Lab::Strange { theta, alpha, lo, hi } => {
            let theta = load_theta(&theta)?;
            let alpha: Vec<u32> = parse_list(&alpha)?;
            let pos = prooflab::strange_positions(&theta, &alpha, lo, hi)?;
            ctx.emit(&json!({"strange": {"alpha": alpha, "lo": lo, "hi": hi, "positions": pos}}))
        }
        Lab::Compete {
            input,
            mode,
            n,
            horizon,
        } => {
            let (sft, f, theta, params) = lab_input(&input)?;
            let mode = match mode {
                Mode::CaseI => CompetitorMode::CaseI,
                Mode::CaseIi => CompetitorMode::CaseIi,
            };
            let r = prooflab::periodic_competitor(&theta, mode, n, &sft, f.as_ref(), &params, horizon)?;
            ctx.emit(&json!({"competitor": r}))
        }
        Lab::LambdaScan {
            model,
            r,
            k,
            delta,
            points,
            budget,
        } => {
            let sft = load_sft(&model.sft)?;
            let affine = load_potential_spec(&model.potential)?.build_affine(sft.alphabet())?;
            let grid = LambdaGrid::new(delta, points)?;
            let rs: Vec<u32> = parse_list(&r)?;
            let report = prooflab::lambda_scan(&affine, &sft, &rs, k, &grid, budget)?;
            ctx.emit(&json!({"lambda_scan": report}))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Ambiguous(_) | Error::EntropyNotConverged { .. } => 3,
        Error::BudgetExceeded { .. } => 4,
        _ => 2,
    }
}

fn kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    let end = dbg.find(|c: char| !c.is_alphanumeric()).unwrap_or(dbg.len());
    dbg[..end].to_string()
}

fn init_threads() {
    if let Some(n) = std::env::var("SPECTRA_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = json!({"error": {"kind": kind(&e), "message": e.to_string()}});
            eprintln!("{msg}");
            ExitCode::from(exit_code(&e))
        }
    }
}
