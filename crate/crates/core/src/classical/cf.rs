//! Eventually periodic continued fractions and their Lagrange values.

use super::surd::QuadraticSurd;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// `[a_0; a_1, …]` given as a preperiod followed by a repeating period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidInput("continued fraction period is empty".into()));
        }
        if period.iter().any(|&a| a == 0) || preperiod.iter().skip(1).any(|&a| a == 0) {
            return Err(Error::InvalidInput(
                "partial quotients after a_0 must be positive".into(),
            ));
        }
        if preperiod.is_empty() && period[0] == 0 {
            return Err(Error::InvalidInput("a_0 repeats but is zero".into()));
        }
        Ok(ContinuedFraction { preperiod, period })
    }

    pub fn purely_periodic(period: Vec<u64>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    /// Partial quotient `a_n`.
    pub fn term(&self, n: usize) -> u64 {
        if n < self.preperiod.len() {
            self.preperiod[n]
        } else {
            self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn value(&self) -> Result<QuadraticSurd> {
        cf_eval(self)
    }
}

type Mat = [BigInt; 4];

fn product(terms: &[u64]) -> Mat {
    let mut m: Mat = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    for &a in terms {
        let a = BigInt::from(a);
        // m · [[a,1],[1,0]]
        m = [
            &m[0] * &a + &m[1],
            m[0].clone(),
            &m[2] * &a + &m[3],
            m[2].clone(),
        ];
    }
    m
}

/// Value of the purely periodic expansion `[a_0; a_1, …, a_{s−1}, a_0, …]`.
pub fn periodic_value(period: &[u64]) -> Result<QuadraticSurd> {
    if period.is_empty() || period.iter().any(|&a| a == 0) {
        return Err(Error::InvalidInput("period must be nonempty and positive".into()));
    }
    let [a, b, c, d] = product(period);
    // fixed point of x ↦ (a x + b)/(c x + d): c x² + (d − a) x − b = 0
    let diff = &a - &d;
    let disc = &diff * &diff + BigInt::from(4) * &b * &c;
    QuadraticSurd::new(diff, BigInt::one(), disc, BigInt::from(2) * c)
}

/// Exact value of an eventually periodic continued fraction.
pub fn cf_eval(cf: &ContinuedFraction) -> Result<QuadraticSurd> {
    let tail = periodic_value(&cf.period)?;
    if cf.preperiod.is_empty() {
        return Ok(tail);
    }
    let [a, b, c, d] = product(&cf.preperiod);
    tail.mobius(&a, &b, &c, &d)
}

/// Lagrange value `limsup (α_n + β_n)` of a sequence with the given period,
/// where `α_n = [a_n; a_{n+1}, …]` and `β_n = [0; a_{n−1}, a_{n−2}, …]`.
/// Also returns a rotation attaining the maximum.
pub fn lagrange_with_argmax(period: &[u64]) -> Result<(QuadraticSurd, usize)> {
    let s = period.len();
    let mut best: Option<(QuadraticSurd, usize)> = None;
    for n in 0..s {
        let fwd: Vec<u64> = (0..s).map(|i| period[(n + i) % s]).collect();
        let back: Vec<u64> = (1..=s).map(|i| period[(n + s - i) % s]).collect();
        let alpha = periodic_value(&fwd)?;
        let beta = periodic_value(&back)?.recip()?;
        let v = alpha.checked_add(&beta)?;
        if best.as_ref().map_or(true, |(b, _)| v > *b) {
            best = Some((v, n));
        }
    }
    best.ok_or_else(|| Error::InvalidInput("period must be nonempty".into()))
}

pub fn lagrange_number(period: &[u64]) -> Result<QuadraticSurd> {
    lagrange_with_argmax(period).map(|(v, _)| v)
}

/// Convergents `p_n / q_n` for `n < count`.
pub fn convergents(cf: &ContinuedFraction, count: usize) -> Vec<(BigInt, BigInt)> {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::from(cf.term(0)), BigInt::one());
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        out.push((p1.clone(), q1.clone()));
    }
    for n in 1..count {
        let a = BigInt::from(cf.term(n));
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        out.push((p1.clone(), q1.clone()));
    }
    out
}
