//! Integer partitions, cycle types, majorization and normalization.
//!
//! Partitions are stored without trailing zeros, so every Young frame has a
//! single canonical representation. Enumeration is in decreasing
//! lexicographic order, which downstream tables rely on for row/column
//! ordering and tie-breaking.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Parts must be weakly
    /// decreasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::MalformedPartition(format!("{parts:?} has an interior zero")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::MalformedPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    /// Sorts arbitrary positive parts into canonical order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The single-row partition `(k)`.
    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Self { parts: vec![k as u32] }
        }
    }

    /// The single-column partition `(1, ..., 1)`.
    pub fn column(k: usize) -> Self {
        Self { parts: vec![1; k] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Transposed Young frame.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let parts = (0..width)
            .map(|j| self.parts.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Multiplies every part by `factor`.
    pub fn stretch(&self, factor: i64) -> Result<Partition> {
        if factor < 1 {
            return Err(Error::InvalidStretch(factor));
        }
        let parts = self.parts.iter().map(|&p| p * factor as u32).collect();
        Ok(Partition { parts })
    }

    /// Parts divided by the weight.
    pub fn normalize(&self) -> Result<NormalizedWeights> {
        let k = self.weight();
        if k == 0 {
            return Err(Error::NormalizationUndefined);
        }
        Ok(NormalizedWeights {
            entries: self.parts.iter().map(|&p| p as f64 / k as f64).collect(),
        })
    }

    /// Hook length of the box in row `i`, column `j` (both 0-based).
    pub fn hook(&self, i: usize, j: usize) -> u32 {
        let arm = self.parts[i] - j as u32 - 1;
        let leg = self.parts[i + 1..].iter().filter(|&&p| p as usize > j).count() as u32;
        arm + leg + 1
    }

    /// Multiplicities `m_j` of each part size `j = 1..=max`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0usize; self.part(0) as usize + 1];
        for &p in &self.parts {
            m[p as usize] += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"3,1"`. The empty string, `"()"` and `"0"` all give the empty
    /// partition. Parentheses and spaces are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if trimmed.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::MalformedPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A partition read as the cycle lengths of a conjugacy class of `S_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(pub Partition);

impl CycleType {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts).map(CycleType)
    }

    pub fn identity(k: usize) -> Self {
        CycleType(Partition::column(k))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.weight()
    }

    /// `+1` or `-1`: the sign of any permutation in the class.
    pub fn sign(&self) -> i32 {
        if (self.degree() - self.0.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Number of permutations with this cycle type:
    /// `k! / prod_j (j^{m_j} m_j!)`.
    pub fn class_size(&self) -> BigUint {
        let mut denom = BigUint::one();
        for (j, &m) in self.0.multiplicities().iter().enumerate().skip(1) {
            if m > 0 {
                denom *= BigUint::from(j).pow(m as u32) * factorial(m);
            }
        }
        factorial(self.degree()) / denom
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for CycleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(CycleType)
    }
}

/// Non-increasing non-negative weights summing to one (a normalized frame
/// `λ/k`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizedWeights {
    pub entries: Vec<f64>,
}

impl NormalizedWeights {
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Every partition of `k` with at most `max_rows` parts, in decreasing
/// lexicographic order.
pub fn enumerate_partitions(k: usize, max_rows: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(k, k, max_rows, &mut current, &mut out);
    out
}

fn fill(remaining: usize, max_part: usize, rows_left: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    if rows_left == 0 {
        return;
    }
    // a part below ceil(remaining / rows_left) cannot finish within the row budget
    let lowest = remaining.div_ceil(rows_left);
    for p in (lowest..=max_part.min(remaining)).rev() {
        current.push(p as u32);
        fill(remaining - p, p, rows_left - 1, current, out);
        current.pop();
    }
}

/// All conjugacy classes of `S_k`, in the same order as
/// [`enumerate_partitions`].
pub fn cycle_types(k: usize) -> Vec<CycleType> {
    enumerate_partitions(k, k.max(1)).into_iter().map(CycleType).collect()
}

/// `true` iff `nu` is majorized by `lambda`: every prefix sum of `nu` is at
/// most the matching prefix sum of `lambda`.
pub fn majorizes(nu: &Partition, lambda: &Partition) -> Result<bool> {
    if nu.weight() != lambda.weight() {
        return Err(Error::IncomparableWeights(nu.weight(), lambda.weight()));
    }
    let rows = nu.len().max(lambda.len());
    let (mut a, mut b) = (0u64, 0u64);
    for i in 0..rows {
        a += nu.part(i) as u64;
        b += lambda.part(i) as u64;
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}
