//! Exact quadratic irrationals `(p + q√d) / r`.

use crate::error::{Error, Result};
use crate::interval::Interval;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// Trial-division cutoff used when extracting square factors from `d`.
const TRIAL_LIMIT: u64 = 2_000_000;

/// `(p + q√d) / r` with `r > 0`, `gcd(p, q, r) = 1`. Rationals have `q = 0`
/// and `d = 1`; otherwise `d > 1` is squarefree whenever its cube root is
/// below [`TRIAL_LIMIT`].
///
/// Equality and ordering are decided exactly by integer arithmetic, also
/// across different radicands.
#[derive(Clone, Debug)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

/// Split `d = s^2 * core`.
fn extract_square(d: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut core = BigInt::one();
    let mut rest = d.clone();
    let limit = match d.to_f64() {
        Some(f) if f.is_finite() => (f.cbrt() as u64 + 2).min(TRIAL_LIMIT),
        _ => TRIAL_LIMIT,
    };
    let mut f = 2u64;
    while f <= limit {
        let fb = BigInt::from(f);
        if &fb * &fb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &fb).is_zero() {
            rest /= &fb;
            e += 1;
        }
        s *= fb.pow(e / 2);
        if e % 2 == 1 {
            core *= &fb;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let root = rest.sqrt();
        if &root * &root == rest {
            s *= root;
        } else {
            core *= rest;
        }
    }
    (s, core)
}

/// Sign of `a + b√d` for `d ≥ 1`.
fn sign_single(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = b.sign();
    let to_ord = |s: Sign| match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    };
    if sb == Sign::NoSign {
        return to_ord(sa);
    }
    if sa == Sign::NoSign || sa == sb {
        return to_ord(sb);
    }
    let a2 = a * a;
    let b2d = b * b * d;
    match a2.cmp(&b2d) {
        Ordering::Greater => to_ord(sa),
        Ordering::Less => to_ord(sb),
        Ordering::Equal => Ordering::Equal,
    }
}

impl QuadraticSurd {
    pub fn new(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::InvalidInput("surd denominator is zero".into()));
        }
        if d.is_negative() || (d.is_zero() && !q.is_zero()) {
            return Err(Error::InvalidInput("surd radicand must be positive".into()));
        }
        let d = if d.is_zero() { BigInt::one() } else { d };
        Ok(Self::normalize(p, q, d, r))
    }

    pub fn from_i64(p: i64, q: i64, d: i64, r: i64) -> Result<Self> {
        Self::new(p.into(), q.into(), d.into(), r.into())
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigInt::from(n), BigInt::one())
    }

    pub fn rational(num: BigInt, den: BigInt) -> Self {
        Self::normalize(num, BigInt::zero(), BigInt::one(), den)
    }

    /// `√n` for a nonnegative integer `n`.
    pub fn sqrt_of(n: i64) -> Result<Self> {
        Self::from_i64(0, 1, n, 1)
    }

    fn normalize(mut p: BigInt, mut q: BigInt, mut d: BigInt, mut r: BigInt) -> Self {
        if !q.is_zero() && !d.is_one() {
            let (s, core) = extract_square(&d);
            q *= s;
            d = core;
        }
        if d.is_one() && !q.is_zero() {
            p += &q;
            q = BigInt::zero();
        }
        if q.is_zero() {
            d = BigInt::one();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_zero() && !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        QuadraticSurd { p, q, d, r }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Option<BigInt> {
        if self.is_rational() {
            Some(other.d.clone())
        } else if other.is_rational() || self.d == other.d {
            Some(self.d.clone())
        } else {
            None
        }
    }

    /// Sum; both operands must share the radicand (or one is rational).
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self
            .common_radicand(other)
            .ok_or_else(|| Error::InvalidInput("sum of surds with different radicands".into()))?;
        Ok(Self::normalize(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            d,
            &self.r * &other.r,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other).ok_or_else(|| {
            Error::InvalidInput("product of surds with different radicands".into())
        })?;
        Ok(Self::normalize(
            &self.p * &other.p + &self.q * &other.q * &d,
            &self.p * &other.q + &self.q * &other.p,
            d,
            &self.r * &other.r,
        ))
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd {
            p: -&self.p,
            q: -&self.q,
            d: self.d.clone(),
            r: self.r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// `1 / self`, rationalised by the conjugate.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidInput("reciprocal of zero".into()));
        }
        // r / (p + q√d) = r (p − q√d) / (p² − q² d)
        let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
        Ok(Self::normalize(
            &self.r * &self.p,
            -(&self.r * &self.q),
            self.d.clone(),
            norm,
        ))
    }

    /// `(a x + b) / (c x + d)` for an integer matrix.
    pub fn mobius(&self, a: &BigInt, b: &BigInt, c: &BigInt, dd: &BigInt) -> Result<Self> {
        let num = Self::normalize(
            a * &self.p + b * &self.r,
            a * &self.q,
            self.d.clone(),
            self.r.clone(),
        );
        let den = Self::normalize(
            c * &self.p + dd * &self.r,
            c * &self.q,
            self.d.clone(),
            self.r.clone(),
        );
        num.checked_mul(&den.recip()?)
    }

    pub fn to_f64(&self) -> f64 {
        let scale = 60u32;
        self.floor_scaled_pow2(scale).to_f64().unwrap_or(f64::NAN) / 2f64.powi(scale as i32)
    }

    /// `floor(self * 2^k)`.
    fn floor_scaled_pow2(&self, k: u32) -> BigInt {
        let factor = BigInt::one() << k;
        self.floor_scaled(&factor)
    }

    /// `floor(self * m)` for a positive integer `m`.
    pub fn floor_scaled(&self, m: &BigInt) -> BigInt {
        // (p m + q m √d) / r ; q m √d = sign(q) √(q² m² d)
        let pm = &self.p * m;
        if self.q.is_zero() {
            return pm.div_floor(&self.r);
        }
        let rad = (&self.q * &self.q) * (m * m) * &self.d;
        let s = rad.sqrt(); // floor of |q| m √d, never exact because d > 1
        // irrational part lies strictly inside (s, s+1)
        let num = if self.q.is_positive() {
            pm + s
        } else {
            pm - s - 1
        };
        // true numerator lies in (num, num + 1); floor division of an integer
        // plus a fraction in (0,1) by r
        num.div_floor(&self.r)
    }

    /// Rigorous enclosure as an interval.
    pub fn enclosure(&self) -> Interval {
        let k = 64u32;
        let f = self.floor_scaled_pow2(k);
        let scale = 2f64.powi(-(k as i32));
        let lo = f.to_f64().unwrap_or(f64::NEG_INFINITY);
        let hi = (&f + BigInt::one()).to_f64().unwrap_or(f64::INFINITY);
        // conversion to f64 may round either way
        Interval::new(lo.next_down() * scale, hi.next_up() * scale)
    }

    /// Decimal expansion truncated toward −∞ to `digits` places.
    pub fn decimal(&self, digits: usize) -> String {
        let m = BigInt::from(10u32).pow(digits as u32);
        let f = self.floor_scaled(&m);
        let neg = f.is_negative();
        let abs = f.abs();
        let (int, frac) = abs.div_rem(&m);
        let int_s = if neg { format!("-{int}") } else { int.to_string() };
        if digits == 0 {
            return int_s;
        }
        let frac_s = frac.to_string();
        format!("{int_s}.{}{frac_s}", "0".repeat(digits - frac_s.len()))
    }
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadraticSurd {}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        // sign of r1 r2 (x − y) = A + B√d1 + C√d2
        let mut a = &self.p * &other.r - &other.p * &self.r;
        let mut b = &self.q * &other.r;
        let mut c = -(&other.q * &self.r);
        if self.d.is_one() {
            a += &b;
            b = BigInt::zero();
        }
        if other.d.is_one() {
            a += &c;
            c = BigInt::zero();
        }
        if self.d == other.d {
            b += &c;
            c = BigInt::zero();
        }
        if c.is_zero() {
            return sign_single(&a, &b, &self.d);
        }
        if b.is_zero() {
            return sign_single(&a, &c, &other.d);
        }
        let su = sign_single(&a, &b, &self.d);
        let sv = if c.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        if su == Ordering::Equal || su == sv {
            return sv;
        }
        // compare |u| with |v| via u² − v²
        let diff = sign_single(
            &(&a * &a + &b * &b * &self.d - &c * &c * &other.d),
            &(BigInt::from(2) * &a * &b),
            &self.d,
        );
        match diff {
            Ordering::Greater => su,
            Ordering::Less => sv,
            Ordering::Equal => Ordering::Equal,
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.q.is_zero(), self.r.is_one()) {
            (true, true) => write!(f, "{}", self.p),
            (true, false) => write!(f, "{}/{}", self.p, self.r),
            (false, _) => {
                let rad = if self.q.is_one() {
                    format!("√{}", self.d)
                } else {
                    format!("{}√{}", self.q, self.d)
                };
                let top = if self.p.is_zero() {
                    rad
                } else {
                    format!("({} + {})", self.p, rad)
                };
                if self.r.is_one() {
                    write!(f, "{top}")
                } else {
                    write!(f, "{top}/{}", self.r)
                }
            }
        }
    }
}

fn big_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuadraticSurd", 4)?;
        st.serialize_field("p", &big_json(&self.p))?;
        st.serialize_field("q", &big_json(&self.q))?;
        st.serialize_field("d", &big_json(&self.d))?;
        st.serialize_field("r", &big_json(&self.r))?;
        st.end()
    }
}
