//! Serde helpers for big integers: JSON numbers when they fit in an `i64`,
//! decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

struct Int<'a>(&'a BigInt);

impl Serialize for Int<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub fn int<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    Int(value).serialize(s)
}

pub fn ints<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&Int(v))?;
    }
    seq.end()
}

pub fn opt_int<S: Serializer>(value: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.serialize_some(&Int(v)),
        None => s.serialize_none(),
    }
}
