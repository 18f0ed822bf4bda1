//! JSON encoding of arbitrary-precision integers: a plain number when it fits
//! in 64 bits, a decimal string otherwise.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(n) => serializer.serialize_i64(n),
            Err(_) => serializer.collect_str(&self.0),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        v.parse().map(JsonInt).map_err(|_| E::custom(format!("bad integer `{v}`")))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(IntVisitor)
    }
}
