use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `l`-out-of-`d` maximin-share condition: partition into `d` parts, keep
/// the worst union of `l` of them.
///
/// `l = 0` is admitted (the empty union, worth nothing) because pair
/// enumeration produces it for small `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pair {
    l: u32,
    d: u32,
}

impl Pair {
    pub fn new(l: u32, d: u32) -> Result<Self> {
        if d == 0 || l > d {
            return Err(Error::InvalidPair {
                l: l.into(),
                d: d.into(),
            });
        }
        Ok(Pair { l, d })
    }

    pub fn l(self) -> u32 {
        self.l
    }

    pub fn d(self) -> u32 {
        self.d
    }

    /// All valid pairs with `d` in `1..=max_d`, ordered by `d` then `l`.
    pub fn grid(max_d: u32) -> impl Iterator<Item = Pair> {
        (1..=max_d).flat_map(|d| (0..=d).map(move |l| Pair { l, d }))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.l, self.d)
    }
}

impl FromStr for Pair {
    type Err = Error;

    /// Parses `l/d`.
    fn from_str(s: &str) -> Result<Self> {
        let (l, d) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected l/d, got {s:?}")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("expected l/d, got {s:?}")))
        };
        Pair::new(num(l)?, num(d)?)
    }
}

impl<'de> Deserialize<'de> for Pair {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            l: u32,
            d: u32,
        }
        let raw = Raw::deserialize(deserializer)?;
        Pair::new(raw.l, raw.d).map_err(serde::de::Error::custom)
    }
}
