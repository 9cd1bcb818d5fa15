//! Numerical and group-theoretic invariants of `S^m Y`: ages of permutations,
//! discrepancy, canonical/terminal class, the Gorenstein test and the
//! symbolic Picard / class group report.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::strata::check_n;

/// Exact reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Self(Ratio::new(numer, denom))
    }

    pub fn integer(v: i64) -> Self {
        Self(Ratio::from_integer(v))
    }

    pub fn zero() -> Self {
        Self(Ratio::zero())
    }

    pub fn one() -> Self {
        Self(Ratio::one())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl std::ops::Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Rational {
    /// `p/q`, or just `p` for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A partition of `m` read as the cycle type of a permutation in `S_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType(Partition);

impl CycleType {
    pub fn new(p: Partition) -> Self {
        Self(p)
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    /// Number of cycles, fixed points included.
    pub fn gamma(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_ones()
    }

    /// `(2,1,…,1)` in `S_m`, `m ≥ 2`.
    pub fn transposition(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::TotalTooSmall { min: 2, got: m });
        }
        let mut parts = vec![1; m as usize - 1];
        parts[0] = 2;
        Ok(Self(Partition::with_total(parts, m)?))
    }
}

impl From<Partition> for CycleType {
    fn from(p: Partition) -> Self {
        Self(p)
    }
}

/// Age of a permutation of cycle type `lambda` acting on `(A^n)^m`:
/// `n (m − γ) / 2`.
pub fn age(n: u32, lambda: &CycleType) -> Result<Rational> {
    check_n(n)?;
    let m = lambda.0.total() as i64;
    let gamma = lambda.gamma() as i64;
    Ok(Rational::new(n as i64 * (m - gamma), 2))
}

fn check_singular_case(m: u32, n: u32) -> Result<()> {
    if m < 2 || n < 2 {
        return Err(Error::OutOfScope(format!(
            "S^{m} of an {n}-fold needs m >= 2 and n >= 2"
        )));
    }
    Ok(())
}

fn discrepancy_closed_form(n: u32) -> Rational {
    let half_n_minus_one = Rational::new(n as i64, 2) - Rational::one();
    half_n_minus_one.min(Rational::one())
}

/// `min{ min_{σ ≠ 1} age(σ) − 1, 1 }`, computed by scanning every cycle type
/// and checked against `min{n/2 − 1, 1}`.
pub fn discrepancy(m: u32, n: u32) -> Result<Rational> {
    check_singular_case(m, n)?;
    let mut min_age: Option<Rational> = None;
    for lambda in enumerate_partitions(m)?.into_iter().map(CycleType) {
        if lambda.is_identity() {
            continue;
        }
        let a = age(n, &lambda)?;
        min_age = Some(min_age.map_or(a, |cur| cur.min(a)));
    }
    let min_age = min_age.expect("S_m has a non-identity element for m >= 2");
    let scanned = (min_age - Rational::one()).min(Rational::one());
    let closed = discrepancy_closed_form(n);
    if scanned != closed {
        return Err(Error::Inconsistent(format!(
            "discrepancy scan gives {scanned}, closed form gives {closed} (m={m}, n={n})"
        )));
    }
    Ok(scanned)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SingularityClass {
    pub canonical: bool,
    pub terminal: bool,
}

pub fn singularity_class(m: u32, n: u32) -> Result<SingularityClass> {
    let d = discrepancy(m, n)?;
    Ok(SingularityClass {
        canonical: d >= Rational::zero(),
        terminal: d > Rational::zero(),
    })
}

/// `K` of `S^m Y` is Cartier iff `n` is even.
pub fn is_gorenstein(n: u32) -> Result<bool> {
    check_n(n)?;
    Ok(n.is_multiple_of(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Summand {
    PicY,
    NsAlbY,
    Z2,
}

impl Summand {
    pub fn symbol(self) -> &'static str {
        match self {
            Summand::PicY => "PicY",
            Summand::NsAlbY => "NS(AlbY)",
            Summand::Z2 => "Z/2Z",
        }
    }
}

impl Serialize for Summand {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

/// Direct sum of symbolic summands, in fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FormalGroup {
    summands: Vec<Summand>,
}

impl FormalGroup {
    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }
}

impl fmt::Display for FormalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.summands.iter().map(|s| s.symbol()).collect();
        f.write_str(&s.join(" + "))
    }
}

/// An element `(pic, ns, torsion)` of `PicY ⊕ NS(AlbY) ⊕ Z/2Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    pub pic: &'static str,
    pub ns: &'static str,
    pub torsion: u8,
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.pic, self.ns, self.torsion)
    }
}

pub const CLASS_GROUP_HYPOTHESES: &str = "Y smooth projective, dim Y = n ≥ 2";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroupReport {
    pub pic: FormalGroup,
    pub cl: FormalGroup,
    pub canonical_class: DivisorClass,
    pub hypotheses: &'static str,
}

pub fn class_group_report(n: u32) -> Result<ClassGroupReport> {
    check_n(n)?;
    Ok(ClassGroupReport {
        pic: FormalGroup {
            summands: vec![Summand::PicY, Summand::NsAlbY],
        },
        cl: FormalGroup {
            summands: vec![Summand::PicY, Summand::NsAlbY, Summand::Z2],
        },
        canonical_class: DivisorClass {
            pic: "K_Y",
            ns: "0",
            torsion: (n % 2) as u8,
        },
        hypotheses: CLASS_GROUP_HYPOTHESES,
    })
}

/// Everything the `invariants` command reports, in output field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub m: u32,
    pub n: u32,
    pub discrepancy: Rational,
    pub canonical: bool,
    pub terminal: bool,
    pub gorenstein: bool,
    pub pic: FormalGroup,
    pub cl: FormalGroup,
    #[serde(rename = "K_X")]
    pub k_x: DivisorClass,
    pub hypotheses: &'static str,
}

pub fn invariant_report(m: u32, n: u32) -> Result<InvariantReport> {
    let discrepancy = discrepancy(m, n)?;
    let class = singularity_class(m, n)?;
    let groups = class_group_report(n)?;
    Ok(InvariantReport {
        m,
        n,
        discrepancy,
        canonical: class.canonical,
        terminal: class.terminal,
        gorenstein: is_gorenstein(n)?,
        pic: groups.pic,
        cl: groups.cl,
        k_x: groups.canonical_class,
        hypotheses: groups.hypotheses,
    })
}
