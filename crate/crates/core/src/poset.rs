//! The refinement order on partitions of `m`: `π ≥ π′` when `π′` refines `π`
//! (so `(m)` is the maximum and `(1,…,1)` the minimum).
//!
//! Closed unions of strata are handled throughout the crate as antichains
//! under this order; [`minimal_elements`] reduces any set of partitions to
//! that normal form.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::partitions::{enumerate_partitions, Partition};
use crate::refinement::refines_unchecked;

/// `π ≥ π′`: `π′` refines `π`.
pub fn order_ge(pi: &Partition, pi_prime: &Partition) -> Result<bool> {
    pi.ensure_same_total(pi_prime)?;
    Ok(refines_unchecked(pi_prime.parts(), pi.parts()))
}

/// `π > π′`.
pub fn order_gt(pi: &Partition, pi_prime: &Partition) -> Result<bool> {
    Ok(pi != pi_prime && order_ge(pi, pi_prime)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetStructure {
    m: u32,
    nodes: Vec<Partition>,
    /// `(lower, upper)` pairs where `upper` covers `lower`.
    hasse_edges: Vec<(Partition, Partition)>,
}

impl PosetStructure {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn nodes(&self) -> &[Partition] {
        &self.nodes
    }

    pub fn hasse_edges(&self) -> &[(Partition, Partition)] {
        &self.hasse_edges
    }

    pub fn maximum(&self) -> &Partition {
        &self.nodes[0]
    }

    pub fn minimum(&self) -> &Partition {
        self.nodes.last().expect("poset has at least one node")
    }

    /// Graphviz rendering: nodes labelled `2+1+1`, edges from finer to
    /// coarser, one rank per number of parts.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph partitions_{} {{", self.m);
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box];");
        let mut k = 0;
        for node in &self.nodes {
            let _ = writeln!(out, "  \"{}\";", node.label());
            k = k.max(node.len());
        }
        for len in 1..=k {
            let level: Vec<String> = self
                .nodes
                .iter()
                .filter(|p| p.len() == len)
                .map(|p| format!("\"{}\";", p.label()))
                .collect();
            if !level.is_empty() {
                let _ = writeln!(out, "  {{ rank=same; {} }}", level.join(" "));
            }
        }
        for (lo, up) in &self.hasse_edges {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", lo.label(), up.label());
        }
        out.push_str("}\n");
        out
    }
}

/// Dense bit rows, one per node.
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn from_rows(n: usize, rows: Vec<Vec<usize>>) -> Self {
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for (i, row) in rows.into_iter().enumerate() {
            for j in row {
                bits[i * words + j / 64] |= 1 << (j % 64);
            }
        }
        Self { words, bits }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }
}

pub fn build_poset(m: u32) -> Result<PosetStructure> {
    build_poset_with(m, Exec::default())
}

/// Builds the poset with pairwise order tests (run under `exec`) followed by
/// transitive reduction.
pub fn build_poset_with(m: u32, exec: Exec) -> Result<PosetStructure> {
    let nodes = enumerate_partitions(m)?;
    let n = nodes.len();
    // above[i] = { j : nodes[j] > nodes[i] }. Strictly coarser partitions
    // have fewer parts, hence appear earlier in enumeration order only when
    // shorter; test every shorter partition.
    let rows = exec.map_range(n, |i| {
        let lo = &nodes[i];
        (0..n)
            .filter(|&j| nodes[j].len() < lo.len() && refines_unchecked(lo.parts(), nodes[j].parts()))
            .collect::<Vec<_>>()
    });
    let above = BitMatrix::from_rows(n, rows);
    let covers = exec.map_range(n, |i| {
        let mut reach = vec![0u64; above.words];
        for z in 0..n {
            if above.get(i, z) {
                for (r, w) in reach.iter_mut().zip(above.row(z)) {
                    *r |= w;
                }
            }
        }
        (0..n)
            .filter(|&j| above.get(i, j) && reach[j / 64] >> (j % 64) & 1 == 0)
            .collect::<Vec<_>>()
    });
    let mut hasse_edges = Vec::new();
    for (i, ups) in covers.into_iter().enumerate() {
        for j in ups {
            hasse_edges.push((nodes[i].clone(), nodes[j].clone()));
        }
    }
    Ok(PosetStructure {
        m,
        nodes,
        hasse_edges,
    })
}

/// Partitions of `m` with exactly `k` parts, in enumeration order.
pub fn level_set(m: u32, k: u32) -> Result<Vec<Partition>> {
    if m == 0 {
        return Err(Error::TotalTooSmall { min: 1, got: 0 });
    }
    if k == 0 || k > m {
        return Err(Error::OutOfRange {
            what: "number of parts",
            value: k as u64,
            lo: 1,
            hi: m as u64,
        });
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k as usize);
    fill_with_parts(m, m, k, &mut cur, m, &mut out);
    Ok(out)
}

fn fill_with_parts(rest: u32, cap: u32, k: u32, cur: &mut Vec<u32>, total: u32, out: &mut Vec<Partition>) {
    if k == 0 {
        if rest == 0 {
            out.push(Partition::from_sorted_unchecked(cur.clone(), total));
        }
        return;
    }
    // each of the k remaining parts is at least 1
    if rest < k {
        return;
    }
    let hi = cap.min(rest - (k - 1));
    for part in (1..=hi).rev() {
        if part * k < rest {
            break;
        }
        cur.push(part);
        fill_with_parts(rest - part, part, k - 1, cur, total, out);
        cur.pop();
    }
}

/// The minimal elements (under `≥`) of `set`: those with no other member
/// strictly below them. Output is deduplicated and in enumeration order.
pub fn minimal_elements(set: &[Partition]) -> Vec<Partition> {
    let mut items: Vec<Partition> = set.to_vec();
    items.sort();
    items.dedup();
    items
        .iter()
        .filter(|&c| {
            !items
                .iter()
                .any(|d| d != c && d.total() == c.total() && refines_unchecked(d.parts(), c.parts()))
        })
        .cloned()
        .collect()
}

pub fn is_antichain(set: &[Partition]) -> bool {
    set.iter().enumerate().all(|(i, a)| {
        set.iter()
            .enumerate()
            .all(|(j, b)| i == j || a.total() != b.total() || !refines_unchecked(b.parts(), a.parts()))
    })
}

/// Minimal common coarsenings of `p1` and `p2`: the irredundant antichain
/// whose strata cover `W_{p1} ∩ W_{p2}`.
pub fn minimal_common_coarsenings(p1: &Partition, p2: &Partition) -> Result<Vec<Partition>> {
    p1.ensure_same_total(p2)?;
    let limit = p1.len().min(p2.len());
    let upper: Vec<Partition> = enumerate_partitions(p1.total())?
        .into_iter()
        .filter(|c| {
            c.len() <= limit
                && refines_unchecked(p1.parts(), c.parts())
                && refines_unchecked(p2.parts(), c.parts())
        })
        .collect();
    Ok(minimal_elements(&upper))
}

/// The partitions strictly above `pi` that are minimal with that property
/// (its covers in the Hasse diagram).
pub fn covers_of(pi: &Partition) -> Vec<Partition> {
    let strictly_above: Vec<Partition> = enumerate_partitions(pi.total())
        .expect("partition total is positive")
        .into_iter()
        .filter(|c| c.len() < pi.len() && refines_unchecked(pi.parts(), c.parts()))
        .collect();
    minimal_elements(&strictly_above)
}
