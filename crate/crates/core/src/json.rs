//! JSON emission with exact numbers. Every float becomes an exact dyadic
//! record with a decimal string computed from it; quadratic surds keep
//! their `(p, q, d, r)` form and gain a decimal.

use crate::classical::QuadraticSurd;
use crate::error::Result;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Map, Value};

/// Default number of decimal places.
pub const DEFAULT_DIGITS: usize = 12;

/// `x = mantissa · 2^exponent` exactly, with an odd mantissa (or zero).
pub fn dyadic_parts(x: f64) -> (i64, i32) {
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (mut m, mut e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1i64 << 52), exp - 1075)
    };
    let tz = m.trailing_zeros() as i32;
    m >>= tz;
    e += tz;
    (sign * m, e)
}

fn dyadic_surd(m: i64, e: i32) -> QuadraticSurd {
    let two = BigInt::from(2u32);
    if e >= 0 {
        QuadraticSurd::rational(BigInt::from(m) * two.pow(e as u32), BigInt::one())
    } else {
        QuadraticSurd::rational(BigInt::from(m), two.pow((-e) as u32))
    }
}

fn decimal_directed(x: &QuadraticSurd, digits: usize, up: bool) -> String {
    if !up {
        return x.decimal(digits);
    }
    let s = x.neg().decimal(digits);
    if let Some(rest) = s.strip_prefix('-') {
        rest.to_string()
    } else if s.chars().all(|c| c == '0' || c == '.') {
        s
    } else {
        format!("-{s}")
    }
}

/// Exact record of a float. Decimals are truncated toward −∞, or toward
/// +∞ when `up` is set.
pub fn float_record(x: f64, digits: usize, up: bool) -> Value {
    if x.is_nan() {
        return json!({"exact": {"type": "nan"}, "decimal": "NaN"});
    }
    if x.is_infinite() {
        let sign = if x > 0.0 { 1 } else { -1 };
        let dec = if x > 0.0 { "inf" } else { "-inf" };
        return json!({"exact": {"type": "infinity", "sign": sign}, "decimal": dec});
    }
    let (m, e) = dyadic_parts(x);
    json!({
        "exact": {"type": "dyadic", "mantissa": m, "exponent": e},
        "decimal": decimal_directed(&dyadic_surd(m, e), digits, up),
    })
}

/// Exact record of a quadratic surd `(p + q√d)/r`.
pub fn surd_record(x: &QuadraticSurd, digits: usize) -> Value {
    let mut exact = match serde_json::to_value(x) {
        Ok(Value::Object(m)) => m,
        _ => Map::new(),
    };
    exact.insert("type".into(), Value::from("surd"));
    json!({"exact": Value::Object(exact), "decimal": x.decimal(digits)})
}

fn is_surd_object(m: &Map<String, Value>) -> bool {
    m.len() == 4 && ["p", "q", "d", "r"].iter().all(|k| m.contains_key(*k))
}

fn big(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn convert(v: Value, digits: usize, up: bool) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => float_record(n.as_f64().unwrap_or(f64::NAN), digits, up),
        Value::Array(a) => Value::Array(a.into_iter().map(|x| convert(x, digits, false)).collect()),
        Value::Object(m) if is_surd_object(&m) => {
            let parts: Option<Vec<BigInt>> = ["p", "q", "d", "r"].iter().map(|k| big(&m[*k])).collect();
            match parts.and_then(|p| {
                let [p, q, d, r]: [BigInt; 4] = p.try_into().ok()?;
                QuadraticSurd::new(p, q, d, r).ok()
            }) {
                Some(s) => surd_record(&s, digits),
                None => Value::Object(m),
            }
        }
        Value::Object(m) => Value::Object(
            m.into_iter()
                .map(|(k, x)| {
                    let up = matches!(k.as_str(), "hi" | "upper");
                    (k, convert(x, digits, up))
                })
                .collect(),
        ),
        other => other,
    }
}

/// Serialize `value` with every float and surd replaced by its exact
/// record. Integers stay plain JSON integers.
pub fn to_exact_value<T: Serialize + ?Sized>(value: &T, digits: usize) -> Result<Value> {
    Ok(convert(serde_json::to_value(value)?, digits, false))
}

/// Pretty-printed form of `to_exact_value`, newline terminated.
pub fn to_exact_string<T: Serialize + ?Sized>(value: &T, digits: usize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&to_exact_value(value, digits)?)?;
    s.push('\n');
    Ok(s)
}
