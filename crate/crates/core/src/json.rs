//! JSON conventions for reports: reals rounded to 12 significant digits,
//! integers beyond `2^53` written as decimal strings.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use serde_json::{Number, Value};

const MAX_SAFE: u64 = 1 << 53;

pub fn bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) if v.unsigned_abs() <= MAX_SAFE => s.serialize_i64(v),
        _ => s.serialize_str(&x.to_string()),
    }
}

pub fn biguint<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) if v <= MAX_SAFE => s.serialize_u64(v),
        _ => s.serialize_str(&x.to_string()),
    }
}

pub fn opt_biguint<S: Serializer>(
    x: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => biguint(v, s),
        None => s.serialize_none(),
    }
}

pub fn u128_exact<S: Serializer>(x: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    if *x <= MAX_SAFE as u128 {
        s.serialize_u64(*x as u64)
    } else {
        s.serialize_str(&x.to_string())
    }
}

/// `x` rounded to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Applies the conventions recursively.
pub fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                if u > MAX_SAFE {
                    return Value::String(u.to_string());
                }
                Value::Number(n)
            } else if let Some(i) = n.as_i64() {
                if i.unsigned_abs() > MAX_SAFE {
                    return Value::String(i.to_string());
                }
                Value::Number(n)
            } else {
                let x = n.as_f64().unwrap_or(f64::NAN);
                Number::from_f64(sig12(x))
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            }
        }
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(x: &T) -> serde_json::Result<Value> {
    Ok(normalize(serde_json::to_value(x)?))
}

/// One normalized JSON line.
pub fn to_line<T: Serialize>(x: &T) -> serde_json::Result<String> {
    serde_json::to_string(&to_value(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding_and_big_integers() {
        assert_eq!(sig12(1.459_273_572_123_456_7), 1.459_273_572_12);
        assert_eq!(sig12(-0.000_123_456_789_012_345), -0.000_123_456_789_012);
        let v = normalize(
            json!({"x": 0.1 + 0.2, "n": 9_007_199_254_740_993u64, "m": 42, "neg": -9_007_199_254_740_993i64}),
        );
        assert_eq!(v["x"], json!(0.3));
        assert_eq!(v["n"], json!("9007199254740993"));
        assert_eq!(v["m"], json!(42));
        assert_eq!(v["neg"], json!("-9007199254740993"));
    }

    #[test]
    fn custom_serializers() {
        #[derive(Serialize)]
        struct T {
            #[serde(serialize_with = "bigint")]
            a: BigInt,
            #[serde(serialize_with = "u128_exact")]
            b: u128,
        }
        let t = T {
            a: BigInt::from(10).pow(30),
            b: 1u128 << 100,
        };
        let v = to_value(&t).unwrap();
        assert_eq!(v["a"], json!("1000000000000000000000000000000"));
        assert_eq!(v["b"], json!((1u128 << 100).to_string()));
        let v = to_value(&T {
            a: BigInt::from(-37),
            b: 5,
        })
        .unwrap();
        assert_eq!(v, json!({"a": -37, "b": 5}));
    }
}
