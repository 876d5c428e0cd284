//! JSON encodings shared by the library and the command line.
//!
//! Scalars are arrays of `{"h": i, "l": j, "q": "p/q"}`; rationals are
//! written as `numerator/denominator` strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::{Ring, Scalar};

pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Schema(format!("malformed rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::Array(
        s.terms()
            .map(|(&(h, l), q)| json!({ "h": h, "l": l, "q": rational_to_string(q) }))
            .collect(),
    )
}

/// Accepts the canonical array form, a bare rational string or an integer.
pub fn scalar_from_json(ring: Ring, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(Scalar::rational(ring, parse_rational(s)?)),
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| {
                Error::Schema(format!("non-integer number {n}; use a \"p/q\" string"))
            })?;
            Ok(Scalar::int(ring, i))
        }
        Value::Array(items) => {
            let mut out = Scalar::zero(ring);
            for item in items {
                let h = item
                    .get("h")
                    .map_or(Some(0), Value::as_i64)
                    .ok_or_else(|| {
                        Error::Schema("scalar term field `h` must be an integer".into())
                    })?;
                let l = item
                    .get("l")
                    .map_or(Some(0), Value::as_u64)
                    .ok_or_else(|| {
                        Error::Schema("scalar term field `l` must be a non-negative integer".into())
                    })?;
                let q = item
                    .get("q")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Schema("scalar term needs a string field `q`".into()))?;
                let term = Scalar::monomial(ring, h as i32, l as u32, parse_rational(q)?)?;
                out = out.add(&term)?;
            }
            Ok(out)
        }
        other => Err(Error::Schema(format!("cannot read a scalar from {other}"))),
    }
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Schema(format!("missing field `{key}`")))
}

pub fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Schema(format!("`{what}` must be an array")))
}

pub fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::Schema(format!("`{what}` must be a string")))
}

pub fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Schema(format!("`{what}` must be a non-negative integer")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn scalar_round_trip() {
        let r = Ring::laurent_aux(2, 3, 1);
        let s = Scalar::monomial(r, -1, 2, rat(-3, 4))
            .unwrap()
            .add(&Scalar::one(r))
            .unwrap();
        let v = scalar_to_json(&s);
        assert_eq!(
            v,
            json!([{"h": -1, "l": 2, "q": "-3/4"}, {"h": 0, "l": 0, "q": "1/1"}])
        );
        assert_eq!(scalar_from_json(r, &v).unwrap(), s);
        assert_eq!(
            scalar_from_json(r, &json!("6/4")).unwrap(),
            Scalar::rational(r, rat(3, 2))
        );
        assert!(scalar_from_json(r, &json!("1/0")).is_err());
    }
}
