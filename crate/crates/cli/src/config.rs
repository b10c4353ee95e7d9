//! Loading of subshifts, potentials, kneading sequences and parameters.

use spectra_core::potentials::{Potential, PotentialSpec};
use spectra_core::prooflab::{ModelParams, ThetaDocument};
use spectra_core::symbolic::{BiSequence, Sft, SftDocument};
use spectra_core::{Error, Result};
use std::path::Path;
use std::sync::Arc;

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))
}

/// `full2`, `goldenmean`, `fullN:k` (also `full:k`, `fullk`) or a JSON file.
pub fn load_sft(spec: &str) -> Result<Sft> {
    let s = spec.trim();
    if s == "goldenmean" {
        return Ok(Sft::golden_mean());
    }
    if let Some(rest) = s.strip_prefix("full") {
        let n = rest.trim_start_matches('N').trim_start_matches(':');
        if let Ok(k) = n.parse::<u32>() {
            if k == 0 {
                return Err(Error::EmptySubshift);
            }
            return Ok(Sft::full(k));
        }
    }
    if !Path::new(s).exists() {
        return Err(Error::InvalidInput(format!("unknown subshift {s:?}")));
    }
    let doc: SftDocument = serde_json::from_str(&read(s)?)?;
    Sft::from_document(&doc)
}

/// `gauss:k`, inline JSON or a JSON file.
pub fn load_potential_spec(spec: &str) -> Result<PotentialSpec> {
    let s = spec.trim();
    if s.starts_with("gauss:") || s.starts_with('{') {
        return PotentialSpec::parse(s);
    }
    if !Path::new(s).exists() {
        return Err(Error::InvalidInput(format!("unknown potential {s:?}")));
    }
    PotentialSpec::parse(&read(s)?)
}

pub fn load_potential(spec: &str, sft: &Sft) -> Result<Arc<dyn Potential>> {
    load_potential_spec(spec)?.build(sft.alphabet())
}

pub fn load_theta(path: &str) -> Result<BiSequence> {
    let doc: ThetaDocument = serde_json::from_str(&read(path)?)?;
    doc.to_sequence()
}

pub fn load_params(path: &str) -> Result<ModelParams> {
    let p: ModelParams = serde_json::from_str(&read(path)?)?;
    p.validate()?;
    Ok(p)
}

/// Comma separated symbols or integers.
pub fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad list entry {t:?}")))
        })
        .collect()
}
