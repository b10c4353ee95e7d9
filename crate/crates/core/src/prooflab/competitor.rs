//! Periodic competitors built from record returns.

use super::records::records;
use super::ModelParams;
use crate::engine::{markov_value, CycleCertificate};
use crate::error::{Error, Result};
use crate::interval::{Interval, Truth};
use crate::potentials::Potential;
use crate::symbolic::{BiSequence, PeriodicSequence, Sft, SymbolView};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompetitorMode {
    /// Period `(a_0, …, a_{k_n − 1})`.
    CaseI,
    /// Period `(a_{k_n}, …, a_{k_{n+1} − 1})`.
    CaseIi,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompetitorReport {
    pub mode: CompetitorMode,
    /// Record index, starting at 1.
    pub n: usize,
    pub k_n: i64,
    pub k_next: Option<i64>,
    pub period: Vec<u32>,
    pub competitor: CycleCertificate,
    pub theta_value: Interval,
    /// The competitor's value is below the Markov value of `θ`.
    pub smaller: Truth,
}

/// Build the periodic competitor from the `n`-th record of `θ` and compare
/// Markov values. The comparison is reported as observed.
pub fn periodic_competitor(
    theta: &BiSequence,
    mode: CompetitorMode,
    n: usize,
    sft: &Sft,
    f: &dyn Potential,
    params: &ModelParams,
    horizon: i64,
) -> Result<CompetitorReport> {
    if n == 0 {
        return Err(Error::InvalidInput("record indices start at 1".into()));
    }
    let analysis = records(theta, f, params, horizon)?;
    let chain = &analysis.chain;
    let k_n = *chain.get(n - 1).ok_or(Error::OutOfHorizon(horizon))?;
    let k_next = chain.get(n).copied();
    let period = match mode {
        CompetitorMode::CaseI => theta.window(0, k_n),
        CompetitorMode::CaseIi => {
            let k1 = k_next.ok_or(Error::OutOfHorizon(horizon))?;
            theta.window(k_n, k1)
        }
    };
    if !sft.is_cyclically_admissible(&period)? {
        return Err(Error::Inadmissible(format!("competitor period {period:?}")));
    }
    let competitor = CycleCertificate::new(PeriodicSequence::new(&period)?, f)?;
    let theta_value = markov_value(theta, f)?;
    Ok(CompetitorReport {
        mode,
        n,
        k_n,
        k_next,
        smaller: competitor.value.lt(&theta_value),
        period,
        competitor,
        theta_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::GaussPotential;

    fn params() -> ModelParams {
        ModelParams::new(1.0, 1.0, 0.3, 0.5, 21, 2).unwrap()
    }

    #[test]
    fn periodic_theta_competes_with_itself() {
        let s = Sft::full(2);
        let f = GaussPotential::new(12).unwrap();
        let x = BiSequence::periodic(vec![1, 2, 2]);
        let r = periodic_competitor(&x, CompetitorMode::CaseI, 1, &s, &f, &params(), 30).unwrap();
        assert_eq!(r.k_n, 3);
        assert_eq!(r.period, vec![1, 2, 2]);
        assert!(r.competitor.value.overlaps(&r.theta_value));
        assert_ne!(r.smaller, Truth::True);
    }

    #[test]
    fn aperiodic_theta_loses_to_its_competitor() {
        let s = Sft::full(2);
        let f = GaussPotential::new(12).unwrap();
        // past 1̄ then 2̄: the junction carries the Markov value
        let x = BiSequence::new(vec![1], vec![], 0, vec![2]).unwrap();
        let r = periodic_competitor(&x, CompetitorMode::CaseI, 1, &s, &f, &params(), 30).unwrap();
        assert_eq!(r.period, vec![2]);
        assert_eq!(r.smaller, Truth::True);
        assert!(r.competitor.value.contains(8f64.sqrt()));
    }
}
