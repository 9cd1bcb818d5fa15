//! Integer partitions of `m`: canonical representation, enumeration,
//! multiplicity (run-length) form and an independent counter.
//!
//! A [`Partition`] stores its parts in non-increasing order together with
//! the total it partitions. Partitions of the same total are ordered
//! reverse-lexicographically, so `(m)` sorts first and `(1,…,1)` last; this is
//! also the order [`enumerate_partitions`] emits.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    total: u32,
}

impl Partition {
    /// Builds a partition from parts given in any order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        let total = parts
            .iter()
            .try_fold(0u32, |acc, &p| acc.checked_add(p))
            .ok_or(Error::Overflow("partition total"))?;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts, total })
    }

    /// Like [`Partition::new`] but additionally checks the declared total.
    pub fn with_total(parts: Vec<u32>, total: u32) -> Result<Self> {
        let p = Self::new(parts)?;
        if p.total != total {
            return Err(Error::TotalMismatch {
                left: p.total,
                right: total,
            });
        }
        Ok(p)
    }

    /// The one-part partition `(m)`.
    pub fn single(m: u32) -> Result<Self> {
        check_total(m)?;
        Ok(Self {
            parts: vec![m],
            total: m,
        })
    }

    /// The all-ones partition `(1,…,1)` of `m`.
    pub fn ones(m: u32) -> Result<Self> {
        check_total(m)?;
        Ok(Self {
            parts: vec![1; m as usize],
            total: m,
        })
    }

    // Callers guarantee the parts are positive, sorted and sum to `total`.
    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>, total: u32) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        debug_assert_eq!(parts.iter().sum::<u32>(), total);
        Self { parts, total }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    /// Number of parts, `|π|`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Always false; a partition has at least one part.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn largest(&self) -> u32 {
        self.parts[0]
    }

    pub fn is_ones(&self) -> bool {
        self.parts[0] == 1
    }

    pub fn is_single(&self) -> bool {
        self.parts.len() == 1
    }

    /// Parts joined by `+`, e.g. `2+1+1`.
    pub fn label(&self) -> String {
        self.join("+")
    }

    fn join(&self, sep: &str) -> String {
        self.parts
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub(crate) fn ensure_same_total(&self, other: &Partition) -> Result<()> {
        if self.total != other.total {
            return Err(Error::TotalMismatch {
                left: self.total,
                right: other.total,
            });
        }
        Ok(())
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total
            .cmp(&other.total)
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Run-length encoding of a partition: `(value, multiplicity)` pairs with
/// strictly decreasing values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MultiplicityForm {
    classes: Vec<(u32, u32)>,
}

impl MultiplicityForm {
    pub fn classes(&self) -> &[(u32, u32)] {
        &self.classes
    }

    pub fn total(&self) -> u32 {
        self.classes.iter().map(|&(v, r)| v * r).sum()
    }

    /// Expands back to the partition it encodes.
    pub fn expand(&self) -> Partition {
        let mut parts = Vec::new();
        for &(v, r) in &self.classes {
            parts.extend(std::iter::repeat_n(v, r as usize));
        }
        Partition::from_sorted_unchecked(parts, self.total())
    }
}

impl fmt::Display for MultiplicityForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .classes
            .iter()
            .map(|(v, r)| format!("{v}^{r}"))
            .collect();
        write!(f, "[{}]", s.join(" "))
    }
}

pub fn to_multiplicity_form(pi: &Partition) -> MultiplicityForm {
    let mut classes: Vec<(u32, u32)> = Vec::new();
    for &p in pi.parts() {
        match classes.last_mut() {
            Some((v, r)) if *v == p => *r += 1,
            _ => classes.push((p, 1)),
        }
    }
    MultiplicityForm { classes }
}

fn check_total(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::TotalTooSmall { min: 1, got: 0 });
    }
    Ok(())
}

/// Every partition of `m`, coarsest `(m)` first and `(1,…,1)` last.
pub fn enumerate_partitions(m: u32) -> Result<Vec<Partition>> {
    check_total(m)?;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m as usize);
    fill(m, m, &mut cur, m, &mut out);
    Ok(out)
}

fn fill(rest: u32, cap: u32, cur: &mut Vec<u32>, total: u32, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition::from_sorted_unchecked(cur.clone(), total));
        return;
    }
    for part in (1..=rest.min(cap)).rev() {
        cur.push(part);
        fill(rest - part, part, cur, total, out);
        cur.pop();
    }
}

/// `p(m)` by Euler's pentagonal-number recurrence. Shares nothing with
/// [`enumerate_partitions`].
pub fn partition_count(m: u32) -> Result<u128> {
    check_total(m)?;
    let m = m as usize;
    let mut table: Vec<u128> = vec![0; m + 1];
    table[0] = 1;
    for i in 1..=m {
        let mut acc: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let mut term = table[i - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                term = term
                    .checked_add(table[i - g2] as i128)
                    .ok_or(Error::Overflow("partition count"))?;
            }
            acc = if k % 2 == 1 {
                acc.checked_add(term)
            } else {
                acc.checked_sub(term)
            }
            .ok_or(Error::Overflow("partition count"))?;
        }
        table[i] = u128::try_from(acc).map_err(|_| Error::Overflow("partition count"))?;
    }
    Ok(table[m])
}

/// Parses a comma-separated list of positive integers in any order.
pub fn parse_partition(s: &str) -> Result<Partition> {
    let parts = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Error::InvalidPartition(format!("{t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_partitions(1).unwrap(), vec![p(&[1])]);
        assert_eq!(
            enumerate_partitions(4).unwrap(),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(10).unwrap().len(), 42);
    }

    #[test]
    fn zero_rejected() {
        assert!(matches!(enumerate_partitions(0), Err(Error::TotalTooSmall { .. })));
        assert!(partition_count(0).is_err());
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(partition_count(1).unwrap(), 1);
        assert_eq!(partition_count(4).unwrap(), 5);
        assert_eq!(partition_count(12).unwrap(), 77);
        assert_eq!(partition_count(100).unwrap(), 190_569_292);
    }

    #[test]
    fn count_matches_enumeration() {
        for m in 1..=20 {
            assert_eq!(
                enumerate_partitions(m).unwrap().len() as u128,
                partition_count(m).unwrap()
            );
        }
    }

    #[test]
    fn multiplicity_form() {
        let mf = |v: &[u32]| to_multiplicity_form(&p(v)).classes().to_vec();
        assert_eq!(mf(&[2, 2, 1]), vec![(2, 2), (1, 1)]);
        assert_eq!(mf(&[5]), vec![(5, 1)]);
        assert_eq!(mf(&[3, 3, 3, 1]), vec![(3, 3), (1, 1)]);
    }

    #[test]
    fn normalizes_and_orders() {
        assert_eq!(p(&[1, 2, 1]).parts(), &[2, 1, 1]);
        assert_eq!(parse_partition("1, 3,2").unwrap(), p(&[3, 2, 1]));
        assert!(parse_partition("1,x").is_err());
        assert!(Partition::with_total(vec![2, 1], 4).is_err());
        let parts = enumerate_partitions(7).unwrap();
        let mut sorted = parts.clone();
        sorted.sort();
        assert_eq!(parts, sorted);
    }

    #[test]
    fn display_forms() {
        let x = p(&[2, 1, 1]);
        assert_eq!(x.to_string(), "(2,1,1)");
        assert_eq!(x.label(), "2+1+1");
        assert_eq!(serde_json::to_string(&x).unwrap(), "[2,1,1]");
        assert_eq!(
            serde_json::to_string(&to_multiplicity_form(&x)).unwrap(),
            "[[2,1],[1,2]]"
        );
        let back: Partition = serde_json::from_str("[1,2,1]").unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Partition>("[0]").is_err());
    }
}
