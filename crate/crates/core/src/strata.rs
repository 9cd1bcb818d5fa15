//! Strata `W_{π,m}` of the `m`-th symmetric power of a smooth `n`-fold and
//! the iterated singular loci built from them.
//!
//! Nothing here touches an actual variety: every quantity depends only on
//! `(m, n, π)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{to_multiplicity_form, MultiplicityForm, Partition};
use crate::poset::{covers_of, level_set};

pub(crate) fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    Ok(())
}

pub(crate) fn check_partition_of(m: u32, pi: &Partition) -> Result<()> {
    if pi.total() != m {
        return Err(Error::TotalMismatch {
            left: pi.total(),
            right: m,
        });
    }
    Ok(())
}

/// Exact non-negative integer that renders as a JSON number when it fits in
/// a `u64` and as a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(pub BigUint);

impl Natural {
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Natural {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    #[serde(skip)]
    m: u32,
    #[serde(skip)]
    n: u32,
    pi: Partition,
    #[serde(rename = "dim")]
    dimension: u64,
    #[serde(rename = "codim")]
    codimension: u64,
    #[serde(rename = "normalization")]
    normalization_factors: MultiplicityForm,
    #[serde(rename = "tangent_dim")]
    tangent_dimension: Natural,
}

impl Stratum {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn pi(&self) -> &Partition {
        &self.pi
    }

    pub fn dimension(&self) -> u64 {
        self.dimension
    }

    pub fn codimension(&self) -> u64 {
        self.codimension
    }

    /// Read as the product of `S^{r_i} Y` over the multiplicity classes.
    pub fn normalization_factors(&self) -> &MultiplicityForm {
        &self.normalization_factors
    }

    pub fn tangent_dimension(&self) -> &Natural {
        &self.tangent_dimension
    }

    /// e.g. `S^2Y x S^1Y`.
    pub fn normalization_label(&self) -> String {
        self.normalization_factors
            .classes()
            .iter()
            .map(|(_, r)| format!("S^{r}Y"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

pub fn stratum(m: u32, n: u32, pi: &Partition) -> Result<Stratum> {
    check_n(n)?;
    check_partition_of(m, pi)?;
    let dimension = n as u64 * pi.len() as u64;
    Ok(Stratum {
        m,
        n,
        pi: pi.clone(),
        dimension,
        codimension: n as u64 * m as u64 - dimension,
        normalization_factors: to_multiplicity_form(pi),
        tangent_dimension: tangent_space_dim(n, pi)?,
    })
}

/// A closed union of strata, stored as the antichain of its maximal strata
/// (minimal partitions under `≥`). Empty antichain means the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedStratifiedSet {
    m: u32,
    n: u32,
    maximal_strata: Vec<Partition>,
}

impl ClosedStratifiedSet {
    pub fn new(m: u32, n: u32, maximal_strata: Vec<Partition>) -> Self {
        Self {
            m,
            n,
            maximal_strata,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn maximal_strata(&self) -> &[Partition] {
        &self.maximal_strata
    }

    pub fn is_empty(&self) -> bool {
        self.maximal_strata.is_empty()
    }

    /// `n · max |π|`, or `None` for the empty set.
    pub fn generic_dimension(&self) -> Option<u64> {
        self.maximal_strata
            .iter()
            .map(|p| self.n as u64 * p.len() as u64)
            .max()
    }
}

/// `Sing W_{π,m}`: the covers of `π`. Empty iff `π = (m)`.
pub fn singular_locus_of_stratum(m: u32, n: u32, pi: &Partition) -> Result<ClosedStratifiedSet> {
    check_n(n)?;
    check_partition_of(m, pi)?;
    Ok(ClosedStratifiedSet::new(m, n, covers_of(pi)))
}

/// `Sing^t(S^m Y)`: all partitions with `m − t` parts, empty for `t ≥ m`.
pub fn iterated_singular_locus(m: u32, n: u32, t: u32) -> Result<ClosedStratifiedSet> {
    check_n(n)?;
    if m == 0 {
        return Err(Error::TotalTooSmall { min: 1, got: 0 });
    }
    let strata = if t >= m { Vec::new() } else { level_set(m, m - t)? };
    Ok(ClosedStratifiedSet::new(m, n, strata))
}

/// Labels of the smooth locally closed pieces `W°_π` making up
/// `Sing^t \ Sing^{t+1}`, for `0 ≤ t ≤ m − 1`.
pub fn smooth_stratum_decomposition(m: u32, n: u32, t: u32) -> Result<Vec<Partition>> {
    check_n(n)?;
    if m == 0 {
        return Err(Error::TotalTooSmall { min: 1, got: 0 });
    }
    if t >= m {
        return Err(Error::OutOfRange {
            what: "t",
            value: t as u64,
            lo: 0,
            hi: m as u64 - 1,
        });
    }
    level_set(m, m - t)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Zariski tangent dimension of `S^m Y` at a point of type `π`:
/// `Σ C(n + a_i, a_i) − k`.
pub fn tangent_space_dim(n: u32, pi: &Partition) -> Result<Natural> {
    check_n(n)?;
    let mut acc = BigUint::ZERO;
    for &a in pi.parts() {
        acc += binomial(n as u64 + a as u64, a as u64);
    }
    Ok(Natural(acc - BigUint::from(pi.len())))
}

/// Reads `(m, n)` back from the dimension chain `dim Sing^0, dim Sing^1, …`.
pub fn recover_parameters(dims: &[u64]) -> Result<(u32, u32)> {
    let bad = |msg: String| Error::NotSymmetricPowerChain(msg);
    let (&first, rest) = dims.split_first().ok_or_else(|| bad("empty chain".into()))?;
    let n = match rest.first() {
        None => first,
        Some(&second) => first
            .checked_sub(second)
            .filter(|&d| d > 0)
            .ok_or_else(|| bad(format!("{first} followed by {second} is not strictly decreasing")))?,
    };
    if n < 2 {
        return Err(bad(format!("step {n} is below the minimal dimension 2")));
    }
    let m = dims.len() as u64;
    for (t, &d) in dims.iter().enumerate() {
        let want = n * (m - t as u64);
        if d != want {
            return Err(bad(format!(
                "entry {t} is {d}, expected {want} for m={m}, n={n}"
            )));
        }
    }
    let m = u32::try_from(m).map_err(|_| bad("chain too long".into()))?;
    let n = u32::try_from(n).map_err(|_| bad("dimension too large".into()))?;
    Ok((m, n))
}

/// A label `{(a_1,d_1),…,(a_k,d_k)}` with `Σ a_i d_i = m`: multiplicity `a_i`
/// on a prime divisor of degree `d_i`. Pairs are kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DivisorStratum(Vec<(u32, u32)>);

impl DivisorStratum {
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(a, d)| a * d).sum()
    }

    /// True when every divisor is a hyperplane (`d_i = 1`); these labels are
    /// exactly the partitions of `m`.
    pub fn all_hyperplanes(&self) -> bool {
        self.0.iter().all(|&(_, d)| d == 1)
    }
}

impl fmt::Display for DivisorStratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|(a, d)| format!("({a},{d})")).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// All divisor-strata labels for degree `m`, ordered by number of pairs and
/// then reverse-lexicographically.
pub fn enumerate_divisor_strata(m: u32) -> Result<Vec<DivisorStratum>> {
    if m == 0 {
        return Err(Error::TotalTooSmall { min: 1, got: 0 });
    }
    // candidate pairs, largest first
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for a in 1..=m {
        for d in 1..=m / a {
            pairs.push((a, d));
        }
    }
    pairs.sort_unstable_by(|x, y| y.cmp(x));
    let mut out = Vec::new();
    let mut cur = Vec::new();
    pick(&pairs, 0, m, &mut cur, &mut out);
    for s in &mut out {
        s.0.reverse();
    }
    out.sort_by(|x, y| x.0.len().cmp(&y.0.len()).then_with(|| y.0.cmp(&x.0)));
    Ok(out)
}

// Non-increasing sequences of pairs (multisets) with the given weight.
fn pick(pairs: &[(u32, u32)], from: usize, rest: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<DivisorStratum>) {
    if rest == 0 {
        out.push(DivisorStratum(cur.clone()));
        return;
    }
    for (i, &(a, d)) in pairs.iter().enumerate().skip(from) {
        if a * d <= rest {
            cur.push((a, d));
            pick(pairs, i, rest - a * d, cur, out);
            cur.pop();
        }
    }
}
