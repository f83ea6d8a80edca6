//! JSON encoding of arbitrary-precision integers.
//!
//! Integers within the IEEE-754 safe range are written as JSON numbers, larger ones as
//! decimal strings. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::intlat::IntMatrix;

const SAFE: i64 = (1 << 53) - 1;

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.unsigned_abs() <= SAFE as u64 => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

pub fn parse_int(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::schema(path, "expected an integer"))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::schema(path, format!("'{s}' is not a decimal integer"))),
        _ => Err(Error::schema(path, "expected an integer")),
    }
}

pub fn int_list_value(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| int_list_value(r)).collect())
}

pub fn parse_int_list(v: &Value, path: &str) -> Result<Vec<BigInt>> {
    let arr = v.as_array().ok_or_else(|| Error::schema(path, "expected an array"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| parse_int(x, &format!("{path}[{i}]")))
        .collect()
}

/// Parses a row-major matrix with the given shape.
pub fn parse_matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<IntMatrix> {
    let arr = v.as_array().ok_or_else(|| Error::schema(path, "expected an array of rows"))?;
    if arr.len() != rows {
        return Err(Error::schema(path, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, r) in arr.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let row = parse_int_list(r, &p)?;
        if row.len() != cols {
            return Err(Error::schema(p, format!("expected {cols} entries, found {}", row.len())));
        }
        data.extend(row);
    }
    IntMatrix::from_vec(rows, cols, data)
}

/// `#[serde(with = ...)]` adapter for `Vec<BigInt>`.
pub mod int_vec {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        int_list_value(xs).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
        let v = Value::deserialize(d)?;
        parse_int_list(&v, "$").map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        let small = BigInt::from(SAFE);
        let big = BigInt::from(SAFE) + 1;
        assert_eq!(int_value(&small), Value::from(SAFE));
        assert_eq!(int_value(&big), Value::String(big.to_string()));
        assert_eq!(parse_int(&int_value(&big), "$").unwrap(), big);
        assert_eq!(parse_int(&Value::String("-12".into()), "$").unwrap(), BigInt::from(-12));
        assert!(parse_int(&Value::Bool(true), "$").is_err());
    }
}
