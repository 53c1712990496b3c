//! Integer partitions and the counting functions built on them.
//!
//! A [`Partition`] is stored without trailing zeros, so the empty partition
//! is the only value of size zero. Partitions compare lexicographically by
//! their parts; "reverse-lexicographic order" throughout the crate means the
//! descending version of this order, e.g. `(4) (3,1) (2,2) (2,1,1) (1,1,1,1)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_partitions`]; p(40) = 37338.
pub const DEFAULT_ENUMERATION_CAP: usize = 40;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    /// Builds a partition, rejecting sequences that increase or contain a
    /// zero before a positive part. Trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::usage(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::usage(format!("partition {parts:?} is not weakly decreasing")));
        }
        let size = parts.iter().sum();
        Ok(Partition { parts, size })
    }

    /// Sorts the given parts into a partition, discarding zeros.
    pub fn from_unsorted(parts: impl IntoIterator<Item = usize>) -> Self {
        let mut parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(n)`; empty when `n == 0`.
    pub fn row(n: usize) -> Self {
        Partition::from_unsorted([n])
    }

    /// The column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition::from_unsorted(std::iter::repeat(1).take(n))
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// True for `(1^k)` with `k >= 1`.
    pub fn is_column(&self) -> bool {
        !self.parts.is_empty() && self.parts[0] == 1
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        let parts = (1..=first)
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count())
            .collect();
        Partition { parts, size: self.size }
    }

    /// Multiset union of the parts, `a ⊔ b`.
    pub fn union(&self, other: &Partition) -> Partition {
        Partition::from_unsorted(self.parts.iter().chain(other.parts.iter()).copied())
    }

    /// Componentwise sum `a + b`, missing parts read as zero.
    pub fn add(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        let parts: Vec<usize> = (0..len).map(|i| self.part(i) + other.part(i)).collect();
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        let size = self.size + other.size;
        Partition { parts, size }
    }

    /// `p ⊔ p ⊔ … ⊔ p` with `n` copies.
    pub fn repeat(&self, n: usize) -> Partition {
        Partition::from_unsorted(self.parts.iter().flat_map(|&p| std::iter::repeat(p).take(n)))
    }

    /// Multiplicity of each distinct part value, keyed by value.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Hook length of the cell in row `r`, column `c` (both 0-based).
    pub fn hook_length(&self, r: usize, c: usize) -> usize {
        let arm = self.parts[r] - c - 1;
        let leg = self.parts[r + 1..].iter().take_while(|&&p| p > c).count();
        arm + leg + 1
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn num_standard_tableaux(&self) -> BigUint {
        let mut hooks = BigUint::one();
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len {
                hooks *= self.hook_length(r, c);
            }
        }
        factorial(self.size) / hooks
    }

    /// Size of the centralizer of a permutation with this cycle type.
    pub fn z(&self) -> BigUint {
        let mut z = BigUint::one();
        for (value, mult) in self.multiplicities() {
            z *= BigUint::from(value).pow(mult as u32) * factorial(mult);
        }
        z
    }

    /// `Π λ_i!`, the order of a row group of this shape.
    pub fn row_group_order(&self) -> BigUint {
        self.parts.iter().map(|&p| factorial(p)).product()
    }

    /// True if the diagram of `self` contains the diagram of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.parts[i] >= other.parts[i])
    }

    /// Parts joined by commas, e.g. `3,2,1`; the empty partition is `""`.
    pub fn label(&self) -> String {
        self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `3,2,1`; `""`, `-`, `()` and `[]` denote the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::usage(format!("bad partition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}

/// Shorthand for building partitions in tests and examples; panics on bad input.
#[macro_export]
macro_rules! partition {
    () => { $crate::partitions::Partition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::partitions::Partition::new(vec![$($p),+]).expect("invalid partition literal")
    };
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// All partitions of `n` in reverse-lexicographic order, refusing `n` above
/// [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_partitions_capped(n: usize, cap: usize) -> Result<Vec<Partition>> {
    if n > cap {
        return Err(Error::resource("partition enumeration size", n as u128, cap as u128));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
            size: current.iter().sum(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// All partitions of every size `1..=max_size`, smallest size first.
pub fn partitions_up_to(max_size: usize) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        out.extend(enumerate_partitions(n)?);
    }
    Ok(out)
}
