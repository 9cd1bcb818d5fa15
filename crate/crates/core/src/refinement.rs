//! Refinements of one partition by another.
//!
//! A refinement of `coarse = (a_1,…,a_k)` by `fine = (b_1,…,b_ℓ)` is a
//! surjection `[ℓ] → [k]` whose fibres have part-sums `a_i`. Two such maps are
//! equivalent when, for every coarse index `i`, they send the same multiset
//! of fine parts to `i`. Deciding existence is a multiway number partitioning
//! problem with prescribed bin sizes; [`refines`] solves it by memoized
//! backtracking.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// One equivalence class of refinements, represented by its per-index
/// blocks: `blocks[i]` is the partition of `coarse.parts()[i]` formed by the
/// fine parts grouped onto index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RefinementClass {
    fine: Partition,
    coarse: Partition,
    blocks: Vec<Partition>,
}

impl RefinementClass {
    pub fn fine(&self) -> &Partition {
        &self.fine
    }

    pub fn coarse(&self) -> &Partition {
        &self.coarse
    }

    pub fn blocks(&self) -> &[Partition] {
        &self.blocks
    }

    /// The block partition over coarse index `i` (1-based).
    pub fn block(&self, i: usize) -> Result<&Partition> {
        induced_block_partition(self, i)
    }
}

/// Does `fine` refine `coarse`, i.e. `coarse ≥ fine`?
pub fn refines(fine: &Partition, coarse: &Partition) -> Result<bool> {
    fine.ensure_same_total(coarse)?;
    Ok(refines_unchecked(fine.parts(), coarse.parts()))
}

// Fast necessary conditions: merging parts can only shorten a partition,
// raise its largest part and move it up in dominance order.
fn quick_reject(fine: &[u32], coarse: &[u32]) -> bool {
    if coarse.len() > fine.len() || coarse[0] < fine[0] {
        return true;
    }
    let (mut sf, mut sc) = (0u32, 0u32);
    for i in 0..coarse.len() {
        sf += fine[i];
        sc += coarse[i];
        if sc < sf {
            return true;
        }
    }
    false
}

pub(crate) fn refines_unchecked(fine: &[u32], coarse: &[u32]) -> bool {
    if fine == coarse {
        return true;
    }
    if coarse.len() == 1 {
        return true;
    }
    if quick_reject(fine, coarse) {
        return false;
    }
    Packer::new(fine).feasible(0, coarse.to_vec())
}

/// Backtracking bin filler. Parts are placed largest first; bins are kept
/// as a sorted multiset of residual capacities, so equal-capacity bins are
/// tried once and the memo key is canonical.
struct Packer<'a> {
    parts: &'a [u32],
    memo: HashMap<(usize, Vec<u32>), bool>,
}

impl<'a> Packer<'a> {
    fn new(parts: &'a [u32]) -> Self {
        Self {
            parts,
            memo: HashMap::new(),
        }
    }

    /// `caps` is sorted non-increasing with no zeros; its sum equals the sum
    /// of `parts[idx..]`.
    fn feasible(&mut self, idx: usize, caps: Vec<u32>) -> bool {
        if caps.is_empty() {
            return idx == self.parts.len();
        }
        let remaining = self.parts.len() - idx;
        if remaining < caps.len() || self.parts[idx] > caps[0] {
            return false;
        }
        if caps.len() == 1 {
            return true;
        }
        let key = (idx, caps);
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let caps = &key.1;
        let part = self.parts[idx];
        let mut found = false;
        let mut last_tried = None;
        for (slot, &cap) in caps.iter().enumerate() {
            if cap < part {
                break;
            }
            if last_tried == Some(cap) {
                continue;
            }
            last_tried = Some(cap);
            let next = place(caps, slot, part);
            if self.feasible(idx + 1, next) {
                found = true;
                break;
            }
        }
        self.memo.insert(key, found);
        found
    }
}

fn place(caps: &[u32], slot: usize, part: u32) -> Vec<u32> {
    let mut next = caps.to_vec();
    let left = next[slot] - part;
    next.remove(slot);
    if left > 0 {
        let pos = next.partition_point(|&c| c > left);
        next.insert(pos, left);
    }
    next
}

/// One representative per equivalence class of refinements of `coarse` by
/// `fine`, sorted lexicographically by block sequence. Empty iff
/// `refines(fine, coarse)` is false.
pub fn enumerate_refinements(fine: &Partition, coarse: &Partition) -> Result<Vec<RefinementClass>> {
    fine.ensure_same_total(coarse)?;
    if !refines_unchecked(fine.parts(), coarse.parts()) {
        return Ok(Vec::new());
    }
    let pool = Pool::of(fine.parts());
    let mut found = BTreeSet::new();
    let mut chosen = Vec::with_capacity(coarse.len());
    assign(coarse.parts(), pool, &mut chosen, &mut found);
    Ok(found
        .into_iter()
        .map(|blocks| RefinementClass {
            fine: fine.clone(),
            coarse: coarse.clone(),
            blocks,
        })
        .collect())
}

/// Distinct fine values (decreasing) with remaining counts.
#[derive(Clone)]
struct Pool {
    values: Vec<u32>,
    counts: Vec<u32>,
}

impl Pool {
    fn of(parts: &[u32]) -> Self {
        let mut values = Vec::new();
        let mut counts: Vec<u32> = Vec::new();
        for &p in parts {
            if values.last() == Some(&p) {
                *counts.last_mut().unwrap() += 1;
            } else {
                values.push(p);
                counts.push(1);
            }
        }
        Self { values, counts }
    }

    fn expand(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (&v, &c) in self.values.iter().zip(&self.counts) {
            out.extend(std::iter::repeat_n(v, c as usize));
        }
        out
    }
}

fn assign(
    coarse: &[u32],
    pool: Pool,
    chosen: &mut Vec<Partition>,
    found: &mut BTreeSet<Vec<Partition>>,
) {
    let Some((&target, rest)) = coarse.split_first() else {
        found.insert(chosen.clone());
        return;
    };
    let mut take = vec![0u32; pool.values.len()];
    let mut blocks = Vec::new();
    sub_multisets(&pool, 0, target, &mut take, &mut blocks);
    for take in blocks {
        let mut left = pool.clone();
        let mut block = Vec::new();
        for (j, &t) in take.iter().enumerate() {
            left.counts[j] -= t;
            block.extend(std::iter::repeat_n(pool.values[j], t as usize));
        }
        if !rest.is_empty() {
            let remaining_parts = left.expand();
            let mut caps = rest.to_vec();
            caps.sort_unstable_by(|a, b| b.cmp(a));
            if !refines_unchecked(&remaining_parts, &caps) {
                continue;
            }
        }
        chosen.push(Partition::from_sorted_unchecked(block, target));
        assign(rest, left, chosen, found);
        chosen.pop();
    }
}

/// All count vectors `take ≤ pool.counts` with `Σ take_j · value_j = target`.
fn sub_multisets(pool: &Pool, j: usize, target: u32, take: &mut [u32], out: &mut Vec<Vec<u32>>) {
    if target == 0 {
        out.push(take.to_vec());
        return;
    }
    if j == pool.values.len() {
        return;
    }
    let v = pool.values[j];
    let most = pool.counts[j].min(target / v);
    for t in (0..=most).rev() {
        take[j] = t;
        sub_multisets(pool, j + 1, target - t * v, take, out);
    }
    take[j] = 0;
}

/// `blocks[i]` for 1-based `i`.
pub fn induced_block_partition(rc: &RefinementClass, i: usize) -> Result<&Partition> {
    if i == 0 || i > rc.blocks.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: rc.blocks.len(),
        });
    }
    Ok(&rc.blocks[i - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn blocks(fine: &[u32], coarse: &[u32]) -> Vec<Vec<Vec<u32>>> {
        enumerate_refinements(&p(fine), &p(coarse))
            .unwrap()
            .iter()
            .map(|rc| rc.blocks().iter().map(|b| b.parts().to_vec()).collect())
            .collect()
    }

    #[test]
    fn decision_examples() {
        assert!(refines(&p(&[2, 1, 1]), &p(&[2, 2])).unwrap());
        assert!(!refines(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(refines(&p(&[3, 2]), &p(&[3, 2])).unwrap());
        assert!(matches!(
            refines(&p(&[2, 1]), &p(&[2, 2])),
            Err(Error::TotalMismatch { .. })
        ));
    }

    #[test]
    fn class_examples() {
        assert_eq!(blocks(&[1, 1, 1], &[2, 1]), vec![vec![vec![1, 1], vec![1]]]);
        assert_eq!(
            blocks(&[2, 1, 1], &[2, 2]),
            vec![vec![vec![2], vec![1, 1]], vec![vec![1, 1], vec![2]]]
        );
        assert_eq!(blocks(&[3, 2], &[3, 2]), vec![vec![vec![3], vec![2]]]);
        assert_eq!(blocks(&[5], &[5]), vec![vec![vec![5]]]);
        assert!(blocks(&[2, 2], &[3, 1]).is_empty());
    }

    #[test]
    fn block_projection() {
        let rcs = enumerate_refinements(&p(&[2, 1, 1]), &p(&[2, 2])).unwrap();
        assert_eq!(induced_block_partition(&rcs[0], 2).unwrap(), &p(&[1, 1]));
        assert_eq!(rcs[1].block(1).unwrap(), &p(&[1, 1]));
        assert!(matches!(
            induced_block_partition(&rcs[0], 0),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(induced_block_partition(&rcs[0], 3).is_err());
        let id = enumerate_refinements(&p(&[3, 2]), &p(&[3, 2])).unwrap();
        assert_eq!(id[0].block(1).unwrap(), &p(&[3]));
    }

    #[test]
    fn everything_coarsens_to_single_part() {
        for m in 1..=10 {
            let top = Partition::single(m).unwrap();
            for f in enumerate_partitions(m).unwrap() {
                assert!(refines(&f, &top).unwrap());
                assert_eq!(enumerate_refinements(&f, &top).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn classes_satisfy_invariants() {
        for m in 1..=8 {
            let ps = enumerate_partitions(m).unwrap();
            for f in &ps {
                for c in &ps {
                    for rc in enumerate_refinements(f, c).unwrap() {
                        assert_eq!(rc.blocks().len(), c.len());
                        let mut union: Vec<u32> = Vec::new();
                        for (b, &a) in rc.blocks().iter().zip(c.parts()) {
                            assert_eq!(b.total(), a);
                            union.extend_from_slice(b.parts());
                        }
                        union.sort_unstable_by(|a, b| b.cmp(a));
                        assert_eq!(union, f.parts());
                    }
                }
            }
        }
    }

    #[test]
    fn classes_are_sorted_and_distinct() {
        let rcs = enumerate_refinements(&p(&[2, 2, 1, 1, 1, 1]), &p(&[4, 2, 2])).unwrap();
        let keys: Vec<_> = rcs.iter().map(|r| r.blocks().to_vec()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }
}
