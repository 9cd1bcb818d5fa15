//! Brute-force counterparts of the production routines, used only for
//! cross-validation (tests and the `verify` command).
//!
//! Nothing here calls into the enumeration, refinement, poset or strata
//! code paths; the shared surface is the `Partition`, `Rational` and
//! `ClosedStratifiedSet` data types. Every routine has a hard scale guard and
//! fails with [`Error::OracleScaleExceeded`] beyond it.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::invariants::Rational;
use crate::partitions::Partition;
use crate::strata::ClosedStratifiedSet;

pub const MAX_FINE_PARTS: usize = 12;
pub const MAX_BRUTE_TOTAL: u32 = 20;
pub const MAX_CHAIN_TOTAL: u32 = 12;
pub const MAX_LABELLED_MAPS: u64 = 5_000_000;

fn guard(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        return Err(Error::OracleScaleExceeded { what, got, limit });
    }
    Ok(())
}

/// Partitions of `m` obtained by sorting every composition of `m` and
/// discarding repeats; returned sorted (coarsest first).
pub fn partitions_brute(m: u32) -> Result<Vec<Partition>> {
    guard("m", m as usize, MAX_BRUTE_TOTAL as usize)?;
    if m == 0 {
        return Err(Error::TotalTooSmall { min: 1, got: 0 });
    }
    let mut seen = BTreeSet::new();
    // bit i of `cuts` set = cut after position i+1
    for cuts in 0u32..(1 << (m - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for i in 0..m - 1 {
            if cuts >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        seen.insert(Partition::new(parts)?);
    }
    Ok(seen.into_iter().collect())
}

/// Number of partitions of `m` into exactly `k` parts, by
/// `p(m, k) = p(m − 1, k − 1) + p(m − k, k)`.
pub fn level_count(m: u32, k: u32) -> u128 {
    let (m, k) = (m as usize, k as usize);
    let mut t = vec![vec![0u128; k + 1]; m + 1];
    t[0][0] = 1;
    for i in 1..=m {
        for j in 1..=k.min(i) {
            t[i][j] = t[i - 1][j - 1] + t[i - j][j];
        }
    }
    t[m][k]
}

/// Every set partition of `0..len` into exactly `blocks` blocks, as
/// restricted-growth strings.
fn set_partitions(len: usize, blocks: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    fn go(
        s: &mut Vec<usize>,
        used: usize,
        len: usize,
        blocks: usize,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if s.len() == len {
            return used == blocks && visit(s);
        }
        for b in 0..=used.min(blocks - 1) {
            s.push(b);
            let stop = go(s, used.max(b + 1), len, blocks, visit);
            s.pop();
            if stop {
                return true;
            }
        }
        false
    }
    if blocks == 0 || blocks > len {
        return;
    }
    go(&mut Vec::with_capacity(len), 0, len, blocks, &mut visit);
}

/// Does `fine` refine `coarse`? Checks every surjection `[ℓ] → [k]`: a
/// surjection is a set partition of the fine indices into `k` blocks plus a
/// labelling, and a labelling with block sums `a_i` exists iff the sorted
/// block sums equal the coarse parts.
pub fn refines_exhaustive(fine: &Partition, coarse: &Partition) -> Result<bool> {
    guard("fine part count", fine.len(), MAX_FINE_PARTS)?;
    if fine.total() != coarse.total() {
        return Err(Error::TotalMismatch {
            left: fine.total(),
            right: coarse.total(),
        });
    }
    let b = fine.parts();
    let k = coarse.len();
    let mut found = false;
    set_partitions(b.len(), k, |rgs| {
        let mut sums = vec![0u32; k];
        for (j, &blk) in rgs.iter().enumerate() {
            sums[blk] += b[j];
        }
        sums.sort_unstable_by(|x, y| y.cmp(x));
        found = sums == coarse.parts();
        found
    });
    Ok(found)
}

/// Refinement classes by brute force over all `k^ℓ` labelled maps, keyed by
/// the per-index block multisets.
pub fn refinement_classes_exhaustive(fine: &Partition, coarse: &Partition) -> Result<BTreeSet<Vec<Vec<u32>>>> {
    let (l, k) = (fine.len(), coarse.len());
    let maps = (k as u64).checked_pow(l as u32).unwrap_or(u64::MAX);
    if maps > MAX_LABELLED_MAPS {
        return Err(Error::OracleScaleExceeded {
            what: "labelled map count",
            got: maps.min(usize::MAX as u64) as usize,
            limit: MAX_LABELLED_MAPS as usize,
        });
    }
    let b = fine.parts();
    let a = coarse.parts();
    let mut out = BTreeSet::new();
    let mut r = vec![0usize; l];
    'maps: loop {
        let mut sums = vec![0u32; k];
        for (j, &i) in r.iter().enumerate() {
            sums[i] += b[j];
        }
        if sums == a {
            let mut blocks = vec![Vec::new(); k];
            for (j, &i) in r.iter().enumerate() {
                blocks[i].push(b[j]);
            }
            for blk in &mut blocks {
                blk.sort_unstable_by(|x, y| y.cmp(x));
            }
            out.insert(blocks);
        }
        for digit in r.iter_mut().rev() {
            *digit += 1;
            if *digit < k {
                continue 'maps;
            }
            *digit = 0;
        }
        break;
    }
    Ok(out)
}

/// Dense `ge[i][j] = nodes[i] ≥ nodes[j]` over brute-force partitions.
struct OracleOrder {
    nodes: Vec<Partition>,
    ge: Vec<Vec<bool>>,
}

impl OracleOrder {
    fn new(m: u32) -> Result<Self> {
        let nodes = partitions_brute(m)?;
        let mut ge = vec![vec![false; nodes.len()]; nodes.len()];
        for (i, hi) in nodes.iter().enumerate() {
            for (j, lo) in nodes.iter().enumerate() {
                ge[i][j] = refines_exhaustive(lo, hi)?;
            }
        }
        Ok(Self { nodes, ge })
    }

    fn gt(&self, i: usize, j: usize) -> bool {
        i != j && self.ge[i][j]
    }

    fn minimal(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter()
            .copied()
            .filter(|&c| !set.iter().any(|&d| self.gt(c, d)))
            .collect()
    }
}

/// `Sing^t(S^m Y)` for `t = 0, 1, …` by literally iterating
/// `Sing(∪ W_i) = ∪ Sing W_i ∪ ∪_{i≠j} (W_i ∩ W_j)` with
/// `Sing W_π = ∪_{π′ > π} W_{π′}` and `W_1 ∩ W_2 = ∪_{π ≥ both} W_π`, reducing
/// to an antichain after every step. The last entry is the empty set.
pub fn singular_chain_recursive(m: u32, n: u32) -> Result<Vec<ClosedStratifiedSet>> {
    guard("m", m as usize, MAX_CHAIN_TOTAL as usize)?;
    let order = OracleOrder::new(m)?;
    let count = order.nodes.len();
    let bottom = (0..count)
        .find(|&i| order.nodes[i].is_ones())
        .expect("(1,...,1) is a partition");
    let mut current: BTreeSet<usize> = [bottom].into();
    let mut chain = Vec::new();
    let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
    loop {
        chain.push(ClosedStratifiedSet::new(
            m,
            n,
            current.iter().map(|&i| order.nodes[i].clone()).collect(),
        ));
        if current.is_empty() {
            break;
        }
        if !seen.insert(current.clone()) {
            return Err(Error::Inconsistent("singular chain does not terminate".into()));
        }
        let mut next = BTreeSet::new();
        for &i in &current {
            next.extend((0..count).filter(|&p| order.gt(p, i)));
        }
        for &i in &current {
            for &j in &current {
                if i != j {
                    next.extend((0..count).filter(|&p| order.ge[p][i] && order.ge[p][j]));
                }
            }
        }
        current = order.minimal(&next);
    }
    Ok(chain)
}

/// Age from first principles: a `c`-cycle acts on each coordinate of `A^n`
/// with eigenvalues `e^{2πi j/c}`, `j = 0..c`, contributing `n Σ j/c`.
pub fn age_eigen(n: u32, lambda: &Partition) -> Rational {
    let per_copy: Rational = lambda
        .parts()
        .iter()
        .map(|&c| (0..c).map(|j| Rational::new(j as i64, c as i64)).sum::<Rational>())
        .sum();
    Rational::integer(n as i64) * per_copy
}

/// Divisor-strata labels of degree `m`: for every multiset of weights
/// summing to `m` (a brute-force partition), every way of factoring each
/// weight as `a · d`.
pub fn divisor_strata_exhaustive(m: u32) -> Result<BTreeSet<Vec<(u32, u32)>>> {
    let mut out = BTreeSet::new();
    for weights in partitions_brute(m)? {
        let options: Vec<Vec<(u32, u32)>> = weights
            .parts()
            .iter()
            .map(|&w| (1..=w).filter(|a| w % a == 0).map(|a| (a, w / a)).collect())
            .collect();
        let mut idx = vec![0usize; options.len()];
        'prod: loop {
            let mut label: Vec<(u32, u32)> = idx.iter().zip(&options).map(|(&i, o)| o[i]).collect();
            label.sort_unstable();
            out.insert(label);
            for (d, o) in idx.iter_mut().zip(&options).rev() {
                *d += 1;
                if *d < o.len() {
                    continue 'prod;
                }
                *d = 0;
            }
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn brute_partitions() {
        assert_eq!(
            partitions_brute(4).unwrap(),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(partitions_brute(10).unwrap().len(), 42);
        assert_eq!(partitions_brute(12).unwrap().len(), 77);
        assert!(partitions_brute(21).is_err());
    }

    #[test]
    fn level_counts() {
        assert_eq!(level_count(4, 2), 2);
        assert_eq!(level_count(10, 3), 8);
        assert_eq!((1..=10).map(|k| level_count(10, k)).sum::<u128>(), 42);
    }

    #[test]
    fn exhaustive_refinement_examples() {
        assert!(refines_exhaustive(&p(&[2, 1, 1]), &p(&[2, 2])).unwrap());
        assert!(refines_exhaustive(&p(&[1, 1]), &p(&[2])).unwrap());
        assert!(!refines_exhaustive(&p(&[3, 1]), &p(&[2, 2])).unwrap());
        assert!(!refines_exhaustive(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(refines_exhaustive(&p(&[5]), &p(&[5])).unwrap());
        let big = Partition::ones(13).unwrap();
        assert!(matches!(
            refines_exhaustive(&big, &p(&[13])),
            Err(Error::OracleScaleExceeded { .. })
        ));
    }

    #[test]
    fn labelled_classes() {
        let c = refinement_classes_exhaustive(&p(&[2, 1, 1]), &p(&[2, 2])).unwrap();
        assert_eq!(c.len(), 2);
        let c = refinement_classes_exhaustive(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![vec![vec![1, 1], vec![1]]]);
    }

    #[test]
    fn chain_examples() {
        let show = |m, n| {
            singular_chain_recursive(m, n)
                .unwrap()
                .iter()
                .map(|s| s.maximal_strata().iter().map(|x| x.parts().to_vec()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        assert_eq!(show(3, 2), vec![vec![vec![1, 1, 1]], vec![vec![2, 1]], vec![vec![3]], vec![]]);
        assert_eq!(show(2, 5), vec![vec![vec![1, 1]], vec![vec![2]], vec![]]);
        assert_eq!(
            show(4, 2),
            vec![
                vec![vec![1, 1, 1, 1]],
                vec![vec![2, 1, 1]],
                vec![vec![3, 1], vec![2, 2]],
                vec![vec![4]],
                vec![],
            ]
        );
        assert_eq!(show(1, 2), vec![vec![vec![1]], vec![]]);
    }

    #[test]
    fn eigen_ages() {
        assert_eq!(age_eigen(2, &p(&[2])), Rational::integer(1));
        assert!(age_eigen(5, &p(&[1, 1, 1])).is_zero());
        assert_eq!(age_eigen(3, &p(&[4])), Rational::new(9, 2));
    }

    #[test]
    fn divisor_brute() {
        assert_eq!(divisor_strata_exhaustive(1).unwrap().len(), 1);
        assert_eq!(divisor_strata_exhaustive(2).unwrap().len(), 3);
        assert_eq!(divisor_strata_exhaustive(3).unwrap().len(), 5);
    }
}
