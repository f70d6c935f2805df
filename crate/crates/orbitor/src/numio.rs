//! JSON representation of arbitrary-precision integers.
//!
//! Group orders and characteristic vectors can exceed the range JSON numbers
//! portably carry, so they are written as decimal strings.  On input both
//! plain JSON integers and decimal strings are accepted.

use crate::linalg::Int;
use num_traits::Zero;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// An [`Int`] that serializes as a decimal string and deserializes from
/// either a string or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct JsonInt(pub Int);

impl JsonInt {
    pub fn zero() -> Self {
        JsonInt(Int::zero())
    }
}

impl From<Int> for JsonInt {
    fn from(v: Int) -> Self {
        JsonInt(v)
    }
}

impl From<i64> for JsonInt {
    fn from(v: i64) -> Self {
        JsonInt(Int::from(v))
    }
}

impl From<JsonInt> for Int {
    fn from(v: JsonInt) -> Self {
        v.0
    }
}

impl fmt::Display for JsonInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

struct JsonIntVisitor;

impl Visitor<'_> for JsonIntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(Int::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(Int::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        Int::from_str(v.trim())
            .map(JsonInt)
            .map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<JsonInt, D::Error> {
        deserializer.deserialize_any(JsonIntVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_numbers_and_strings_emits_strings() {
        let a: JsonInt = serde_json::from_str("-42").unwrap();
        let b: JsonInt = serde_json::from_str("\"-42\"").unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"-42\"");

        let big: JsonInt = serde_json::from_str("\"123456789012345678901234567890\"").unwrap();
        assert_eq!(big.0.to_string(), "123456789012345678901234567890");
        assert!(serde_json::from_str::<JsonInt>("\"12x\"").is_err());
    }
}
