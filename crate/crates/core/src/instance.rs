//! Item values and instances under the additive ordering.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Value of an item or of a bundle of items.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Value(pub u64);

impl Value {
    pub const ZERO: Value = Value(0);

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn checked_add(self, other: Value) -> Option<Value> {
        self.0.checked_add(other.0).map(Value)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value(v)
    }
}

/// A multiset of item values.
///
/// Construction checks that the total fits in a `u64`, so every subset sum
/// computed downstream is free of wraparound. Item order is preserved so that
/// allocations and witnesses can refer to items by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Instance {
    items: Vec<Value>,
    #[serde(skip)]
    total: u64,
}

impl Instance {
    pub fn new(items: Vec<Value>) -> Result<Self> {
        let total = items
            .iter()
            .try_fold(0u64, |acc, v| acc.checked_add(v.0))
            .ok_or(Error::Overflow)?;
        Ok(Instance { items, total })
    }

    pub fn from_values(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        Instance::new(values.into_iter().map(Value).collect())
    }

    /// `m` items of value 1: the cardinality ordering as an additive one.
    pub fn unit(m: usize) -> Self {
        Instance {
            items: vec![Value(1); m],
            total: m as u64,
        }
    }

    pub fn items(&self) -> &[Value] {
        &self.items
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.items.iter().map(|v| v.0)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn total(&self) -> Value {
        Value(self.total)
    }

    pub fn is_canonical(&self) -> bool {
        self.items.windows(2).all(|w| w[0] >= w[1])
    }

    /// Sum of the items at `indices`.
    pub fn bundle_value(&self, indices: &[usize]) -> Value {
        Value(indices.iter().map(|&i| self.items[i].0).sum())
    }

    /// Multiplies every item by `factor`, failing if the total overflows.
    pub fn scaled(&self, factor: u64) -> Result<Self> {
        let items = self
            .items
            .iter()
            .map(|v| v.0.checked_mul(factor).map(Value).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(items)
    }

    /// Parses the text form: integers separated by commas and/or whitespace,
    /// or a JSON array of integers.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if let Some(inner) = trimmed.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse("unterminated JSON array".into()))?;
            return Instance::parse_list(inner);
        }
        Instance::parse_list(trimmed)
    }

    fn parse_list(text: &str) -> Result<Self> {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<u64>()
                    .map(Value)
                    .map_err(|_| Error::Parse(format!("not a non-negative integer: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .and_then(Instance::new)
    }
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Instance::parse(s)
    }
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<Value>::deserialize(deserializer)?;
        Instance::new(items).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Returns the instance with items sorted non-increasing.
pub fn canonicalize(instance: &Instance) -> Instance {
    let mut items = instance.items.clone();
    items.sort_unstable_by(|a, b| b.cmp(a));
    Instance {
        items,
        total: instance.total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inst(v: &[u64]) -> Instance {
        Instance::from_values(v.iter().copied()).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&inst(&[1, 3, 5, 6, 9])), inst(&[9, 6, 5, 3, 1]));
        assert_eq!(canonicalize(&inst(&[])), inst(&[]));
        assert_eq!(canonicalize(&inst(&[5, 5, 5])), inst(&[5, 5, 5]));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Instance::parse("1,3, 5\n6 9").unwrap(), inst(&[1, 3, 5, 6, 9]));
        assert_eq!(Instance::parse("[40, 60]").unwrap(), inst(&[40, 60]));
        assert_eq!(Instance::parse("").unwrap(), inst(&[]));
        assert_eq!(Instance::parse("[]").unwrap(), inst(&[]));
        assert!(Instance::parse("1,-2").is_err());
        assert!(Instance::parse("1.5").is_err());
        assert!(Instance::parse("[1,2").is_err());
    }

    #[test]
    fn overflow_is_refused() {
        assert_eq!(Instance::from_values([u64::MAX, 1]), Err(Error::Overflow));
        assert_eq!(inst(&[u64::MAX / 2]).scaled(3), Err(Error::Overflow));
    }

    #[test]
    fn json_round_trip() {
        let x = inst(&[9, 0, 4]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[9,0,4]");
        let back: Instance = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.total(), Value(13));
    }

    proptest! {
        #[test]
        fn canonicalize_preserves_multiset(v in proptest::collection::vec(0u64..100, 0..12)) {
            let x = inst(&v);
            let c = canonicalize(&x);
            prop_assert!(c.is_canonical());
            prop_assert_eq!(c.total(), x.total());
            prop_assert_eq!(canonicalize(&c), c.clone());
            let mut a: Vec<u64> = x.values().collect();
            let mut b: Vec<u64> = c.values().collect();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }
    }
}
