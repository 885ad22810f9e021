//! Extended Sprague-Grundy values and their algebra.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Either a nim value `m` or the infinite-rank value `∞(A)`, where `A`
/// collects the finite values of the position's finite-rank options.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SGValue {
    Finite(u32),
    InfiniteRank(BTreeSet<u32>),
}

impl SGValue {
    pub fn infinite<I: IntoIterator<Item = u32>>(set: I) -> Self {
        SGValue::InfiniteRank(set.into_iter().collect())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SGValue::Finite(_))
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            SGValue::Finite(m) => Some(*m),
            SGValue::InfiniteRank(_) => None,
        }
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            SGValue::Finite(0) => Outcome::P,
            SGValue::Finite(_) => Outcome::N,
            SGValue::InfiniteRank(a) if a.contains(&0) => Outcome::N,
            SGValue::InfiniteRank(_) => Outcome::D,
        }
    }
}

impl fmt::Display for SGValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SGValue::Finite(m) => write!(f, "{m}"),
            SGValue::InfiniteRank(a) => {
                f.write_str("inf:{")?;
                for (i, v) in a.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl FromStr for SGValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("inf:{").and_then(|r| r.strip_suffix('}')) {
            if rest.is_empty() {
                return Ok(SGValue::InfiniteRank(BTreeSet::new()));
            }
            rest.split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad member `{t}`: {e}")))
                .collect::<Result<BTreeSet<_>, _>>()
                .map(SGValue::InfiniteRank)
        } else {
            s.parse::<u32>().map(SGValue::Finite).map_err(|e| format!("bad value `{s}`: {e}"))
        }
    }
}

impl Serialize for SGValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SGValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Outcome class under normal play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    /// First player (the one to move) wins.
    N,
    /// Second player wins.
    P,
    /// Drawn with best play.
    D,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::N => "N",
            Outcome::P => "P",
            Outcome::D => "D",
        })
    }
}

/// Least natural number not in `values`.
pub fn mex<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    let mut seen: Vec<bool> = Vec::new();
    for v in values {
        let v = v as usize;
        if v >= seen.len() {
            seen.resize(v + 1, false);
        }
        seen[v] = true;
    }
    seen.iter().position(|&b| !b).unwrap_or(seen.len()) as u32
}

/// Value of a disjunctive sum.
pub fn sum_value(g: &SGValue, h: &SGValue) -> SGValue {
    match (g, h) {
        (SGValue::Finite(m), SGValue::Finite(n)) => SGValue::Finite(m ^ n),
        (SGValue::InfiniteRank(_), SGValue::InfiniteRank(_)) => SGValue::InfiniteRank(BTreeSet::new()),
        (SGValue::InfiniteRank(a), SGValue::Finite(m)) | (SGValue::Finite(m), SGValue::InfiniteRank(a)) => {
            SGValue::InfiniteRank(a.iter().map(|x| x ^ m).collect())
        }
    }
}

/// Two games are equivalent iff their extended values coincide.
pub fn equivalent(g: &SGValue, h: &SGValue) -> bool {
    g == h
}
