//! JSON encoding of unbounded integers: plain numbers while they fit in an
//! `i64`, decimal strings beyond that.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Either form of an integer on the wire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireInt {
    Num(i64),
    Str(String),
}

impl WireInt {
    /// Encodes `x`, as a string when `as_string` is set or `x` overflows `i64`.
    pub fn encode(x: &BigInt, as_string: bool) -> WireInt {
        match x.to_i64() {
            Some(v) if !as_string => WireInt::Num(v),
            _ => WireInt::Str(x.to_string()),
        }
    }

    pub fn decode(&self) -> Result<BigInt, String> {
        match self {
            WireInt::Num(v) => Ok(BigInt::from(*v)),
            WireInt::Str(s) => s
                .parse::<BigInt>()
                .map_err(|e| format!("invalid decimal integer {s:?}: {e}")),
        }
    }
}

pub fn fits_i64(x: &BigInt) -> bool {
    x.to_i64().is_some()
}

/// An integer serialized per [`WireInt::encode`] without a forced string form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decimal(pub BigInt);

impl From<BigInt> for Decimal {
    fn from(x: BigInt) -> Self {
        Decimal(x)
    }
}

impl From<&BigInt> for Decimal {
    fn from(x: &BigInt) -> Self {
        Decimal(x.clone())
    }
}

impl From<i64> for Decimal {
    fn from(x: i64) -> Self {
        Decimal(BigInt::from(x))
    }
}

impl From<u64> for Decimal {
    fn from(x: u64) -> Self {
        Decimal(BigInt::from(x))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WireInt::encode(&self.0, false).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        WireInt::deserialize(d)?
            .decode()
            .map(Decimal)
            .map_err(serde::de::Error::custom)
    }
}
