//! Executable versions of the combinatorics behind the periodicity of the
//! minimum: records, happy and cool indices, cells, the power-factor claim,
//! strange positions, deletion surgery, periodic competitors and the
//! perturbation measure experiment.

mod cells;
mod claim;
mod competitor;
mod lambda;
mod records;

pub use cells::{basic_cell, cells, extend, CellModel, CellSpec, Side};
pub use claim::{
    deletion_surgery, power_factor_check, power_factor_check_word, strange_positions,
    PowerFactor, SurgeryReport,
};
pub use competitor::{periodic_competitor, CompetitorMode, CompetitorReport};
pub use lambda::{dimension_proxy, lambda_scan, LambdaGrid, LambdaScanReport, ScanRow};
pub use records::{
    distance_profile, happiness, records, Happiness, PositionFlags, RecordAnalysis,
    DISTANCE_DEPTH,
};

use crate::error::{Error, Result};
use crate::symbolic::{BiSequence, OneSidedSequence};
use serde::{Deserialize, Serialize};

/// Constants of the local model at the reference point: derivative
/// coefficients `a`, `b`, contraction bounds `λ₁ < λ₂`, the cool radius `K`
/// and the power exponent `m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    pub a: f64,
    pub b: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub m: usize,
}

impl ModelParams {
    pub fn new(a: f64, b: f64, lambda1: f64, lambda2: f64, k: usize, m: usize) -> Result<Self> {
        let p = ModelParams {
            a,
            b,
            lambda1,
            lambda2,
            k,
            m,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters with `m = m₀·k₀`, `k₀` the least integer with
    /// `λ₂^{k₀} < λ₁`, and `K = 5m² + 1`.
    pub fn from_m0(a: f64, b: f64, lambda1: f64, lambda2: f64, m0: usize) -> Result<Self> {
        if !(0.0 < lambda1 && lambda1 < lambda2 && lambda2 < 1.0) {
            return Err(Error::InvalidInput("need 0 < λ₁ < λ₂ < 1".into()));
        }
        let m = m0 * k0(lambda1, lambda2);
        Self::new(a, b, lambda1, lambda2, 5 * m * m + 1, m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a == 0.0 || self.b == 0.0 || !self.a.is_finite() || !self.b.is_finite() {
            return Err(Error::InvalidInput("a and b must be finite and nonzero".into()));
        }
        if !(0.0 < self.lambda1 && self.lambda1 < self.lambda2 && self.lambda2 < 1.0) {
            return Err(Error::InvalidInput("need 0 < λ₁ < λ₂ < 1".into()));
        }
        if self.m == 0 || self.k <= 5 * self.m * self.m {
            return Err(Error::InvalidInput("need m ≥ 1 and K > 5m²".into()));
        }
        Ok(())
    }

    /// `min{|a/b|, |b/a|}·λ₁³`.
    pub fn record_factor(&self) -> f64 {
        let q = (self.a / self.b).abs();
        q.min(1.0 / q) * self.lambda1.powi(3)
    }

    pub fn k0(&self) -> usize {
        k0(self.lambda1, self.lambda2)
    }
}

fn k0(lambda1: f64, lambda2: f64) -> usize {
    let mut k = (lambda1.ln() / lambda2.ln()).ceil().max(1.0) as usize;
    while lambda2.powi(k as i32) >= lambda1 {
        k += 1;
    }
    k
}

/// One-sided tail, listed outward from position 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailDocument {
    #[serde(default)]
    pub preperiod: Vec<u32>,
    pub period: Vec<u32>,
}

/// Kneading sequence file: `a_0`, the future `a_1, a_2, …` and the past
/// `a_{−1}, a_{−2}, …`, each as preperiod plus period.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaDocument {
    pub past: TailDocument,
    pub zero: u32,
    pub future: TailDocument,
}

impl ThetaDocument {
    pub fn to_sequence(&self) -> Result<BiSequence> {
        if self.past.period.is_empty() || self.future.period.is_empty() {
            return Err(Error::InvalidInput("tail periods must be nonempty".into()));
        }
        let mut center: Vec<u32> = self.past.preperiod.iter().rev().copied().collect();
        let start = -(center.len() as i64);
        center.push(self.zero);
        center.extend(&self.future.preperiod);
        let left: Vec<u32> = self.past.period.iter().rev().copied().collect();
        BiSequence::new(left, center, start, self.future.period.clone())
    }

    pub fn from_sequence(x: &BiSequence) -> Self {
        use crate::symbolic::{Direction, SymbolView};
        let tail = |o: OneSidedSequence| TailDocument {
            preperiod: o.preperiod,
            period: o.period,
        };
        ThetaDocument {
            past: tail(OneSidedSequence::tail_of(x, 0, Direction::Stable)),
            zero: x.at(0),
            future: tail(OneSidedSequence::tail_of(x, 0, Direction::Unstable)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::SymbolView;

    #[test]
    fn params_invariants() {
        assert!(ModelParams::new(1.0, 1.0, 0.3, 0.5, 20, 2).is_err());
        assert!(ModelParams::new(1.0, 1.0, 0.5, 0.3, 21, 2).is_err());
        assert!(ModelParams::new(0.0, 1.0, 0.3, 0.5, 21, 2).is_err());
        let p = ModelParams::new(2.0, -1.0, 0.3, 0.5, 21, 2).unwrap();
        assert!((p.record_factor() - 0.5 * 0.027).abs() < 1e-15);
        // 0.5^2 = 0.25 < 0.3 but 0.5 ≥ 0.3
        assert_eq!(p.k0(), 2);
        let q = ModelParams::from_m0(1.0, 1.0, 0.3, 0.5, 3).unwrap();
        assert_eq!(q.m, 6);
        assert_eq!(q.k, 181);
    }

    #[test]
    fn theta_document_round_trip() {
        let doc: ThetaDocument = serde_json::from_str(
            r#"{"past":{"preperiod":[2,3],"period":[1]},"zero":4,"future":{"period":[5,6]}}"#,
        )
        .unwrap();
        let x = doc.to_sequence().unwrap();
        assert_eq!(x.window(-4, 5), vec![1, 1, 3, 2, 4, 5, 6, 5, 6]);
        let back = ThetaDocument::from_sequence(&x).to_sequence().unwrap();
        assert_eq!(back.window(-20, 20), x.window(-20, 20));
    }
}
