//! Closed intervals with f64 endpoints and directed rounding.
//!
//! Every endpoint is a dyadic rational. Arithmetic rounds the lower endpoint
//! toward −∞ and the upper endpoint toward +∞, using error-free transforms to
//! detect exact results, so point intervals stay points whenever the operation
//! is exact in binary floating point.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Three-valued outcome of a comparison between enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Indeterminate,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Indeterminate,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::True, _) | (_, Truth::True) => Truth::True,
            (Truth::False, Truth::False) => Truth::False,
            _ => Truth::Indeterminate,
        }
    }

    pub fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Indeterminate => Truth::Indeterminate,
        }
    }

    pub fn is_true(self) -> bool {
        self == Truth::True
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// Alias used where the enclosure stands for a real number given by a series.
pub type DyadicInterval = Interval;

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() || e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() || e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    let e = a.mul_add(b, -p);
    if !p.is_finite() || e < 0.0 {
        p.next_down()
    } else {
        p
    }
}

fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    let e = a.mul_add(b, -p);
    if !p.is_finite() || e > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// Quotient `a / b` rounded down; `b` must be positive.
pub(crate) fn div_down(a: f64, b: f64) -> f64 {
    debug_assert!(b > 0.0);
    let q = a / b;
    // a - q*b > 0 means q is below the true quotient
    let r = (-q).mul_add(b, a);
    if r < 0.0 {
        q.next_down()
    } else {
        q
    }
}

/// Quotient `a / b` rounded up; `b` must be positive.
pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    debug_assert!(b > 0.0);
    let q = a / b;
    let r = (-q).mul_add(b, a);
    if r > 0.0 {
        q.next_up()
    } else {
        q
    }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(
            !lo.is_nan() && !hi.is_nan() && lo <= hi,
            "invalid interval [{lo}, {hi}]"
        );
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval::new(x, x)
    }

    pub fn entire() -> Self {
        Interval::new(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Interval::new(lo, hi))
    }

    /// Enclosure of `max(x, y)` for `x` in `self`, `y` in `other`.
    pub fn max(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(add_down(self.lo, other.lo), add_up(self.hi, other.hi))
    }

    pub fn add_scalar(&self, c: f64) -> Interval {
        Interval::new(add_down(self.lo, c), add_up(self.hi, c))
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: f64) -> Interval {
        if c >= 0.0 {
            Interval::new(mul_down(self.lo, c), mul_up(self.hi, c))
        } else {
            Interval::new(mul_down(self.hi, c), mul_up(self.lo, c))
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands_lo = [
            mul_down(self.lo, other.lo),
            mul_down(self.lo, other.hi),
            mul_down(self.hi, other.lo),
            mul_down(self.hi, other.hi),
        ];
        let cands_hi = [
            mul_up(self.lo, other.lo),
            mul_up(self.lo, other.hi),
            mul_up(self.hi, other.lo),
            mul_up(self.hi, other.hi),
        ];
        let lo = cands_lo.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = cands_hi.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(lo, hi)
    }

    /// `x < y` for every choice of `x` in `self`, `y` in `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn lt(&self, other: &Interval) -> Truth {
        if self.hi < other.lo {
            Truth::True
        } else if self.lo >= other.hi {
            Truth::False
        } else {
            Truth::Indeterminate
        }
    }

    pub fn ge(&self, other: &Interval) -> Truth {
        self.lt(other).not()
    }

    /// Guaranteed lower bound of `|x - y|`.
    pub fn gap(&self, other: &Interval) -> f64 {
        if self.hi < other.lo {
            add_down(other.lo, -self.hi)
        } else if other.hi < self.lo {
            add_down(self.lo, -other.hi)
        } else {
            0.0
        }
    }

    /// Total order by lower then upper endpoint.
    pub fn cmp_lo(&self, other: &Interval) -> Ordering {
        self.lo
            .total_cmp(&other.lo)
            .then(self.hi.total_cmp(&other.hi))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sums_stay_points() {
        let a = Interval::point(0.5).add(&Interval::point(0.25));
        assert!(a.is_point());
        assert_eq!(a.lo(), 0.75);
    }

    #[test]
    fn inexact_sum_is_widened() {
        let a = Interval::point(0.1).add(&Interval::point(0.2));
        assert!(!a.is_point());
        assert!(a.lo() < a.hi());
        assert!(a.width() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn division_brackets_third() {
        let lo = div_down(1.0, 3.0);
        let hi = div_up(1.0, 3.0);
        assert!(lo < hi);
        assert_eq!(div_down(1.0, 4.0), 0.25);
        assert_eq!(div_up(1.0, 4.0), 0.25);
    }

    #[test]
    fn truth_tables() {
        use Truth::*;
        assert_eq!(True.and(Indeterminate), Indeterminate);
        assert_eq!(False.and(Indeterminate), False);
        assert_eq!(True.or(Indeterminate), True);
        assert_eq!(Indeterminate.not(), Indeterminate);
    }

    #[test]
    fn comparisons() {
        let a = Interval::new(1.0, 2.0);
        let b = Interval::new(2.5, 3.0);
        assert_eq!(a.lt(&b), Truth::True);
        assert_eq!(b.lt(&a), Truth::False);
        assert_eq!(a.lt(&Interval::new(1.5, 4.0)), Truth::Indeterminate);
        assert_eq!(a.gap(&b), 0.5);
    }
}
