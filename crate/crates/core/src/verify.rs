//! Oracle cross-check suites behind the `verify` command.
//!
//! Each suite compares a production routine with its brute-force or
//! closed-form counterpart over a range set by `max_m` / `max_n`. Suites whose
//! oracle has a hard scale guard are clamped to it and say so in their note.

use std::time::{Duration, Instant};

use crate::error::Result;
use crate::exec::Exec;
use crate::germs::preimage_decomposition;
use crate::invariants::{
    age, class_group_report, discrepancy, is_gorenstein, singularity_class, CycleType, Rational,
};
use crate::oracle;
use crate::partitions::{enumerate_partitions, partition_count, Partition};
use crate::poset::{build_poset_with, is_antichain, level_set, order_ge};
use crate::refinement::{enumerate_refinements, refines};
use crate::strata::{enumerate_divisor_strata, iterated_singular_locus, recover_parameters, tangent_space_dim};

/// Scale limits for the oracle-backed suites.
pub const REFINEMENT_MAX_M: u32 = 8;
pub const CHAIN_MAX_M: u32 = 9;
pub const GERM_MAX_M: u32 = 8;
pub const DIVISOR_MAX_M: u32 = 12;

/// Deliberate defects for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Empties the closed-form `Sing^1` before comparing chains.
    FlipLevel,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_m: u32,
    pub max_n: u32,
    pub exec: Exec,
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
    pub elapsed: Duration,
    pub note: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Per-item outcome: number of checks made and the failures seen.
type Tally = (u64, Vec<String>);

fn merge(parts: Vec<Result<Tally>>) -> Tally {
    let mut checks = 0;
    let mut failures = Vec::new();
    for part in parts {
        match part {
            Ok((c, f)) => {
                checks += c;
                failures.extend(f);
            }
            Err(e) => failures.push(format!("error: {e}")),
        }
    }
    (checks, failures)
}

fn run(name: &'static str, note: Option<String>, body: impl FnOnce() -> Tally) -> SuiteReport {
    let start = Instant::now();
    let (checks, failures) = body();
    SuiteReport {
        name,
        checks,
        failures,
        elapsed: start.elapsed(),
        note,
    }
}

fn clamp_note(asked: u32, limit: u32) -> Option<String> {
    (asked > limit).then(|| format!("clamped to m <= {limit} (oracle scale guard)"))
}

fn vacuous(name: &'static str, why: &str) -> SuiteReport {
    SuiteReport {
        name,
        checks: 0,
        failures: Vec::new(),
        elapsed: Duration::ZERO,
        note: Some(format!("vacuous: {why}")),
    }
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    vec![
        partition_counts(cfg),
        refinement(cfg),
        poset_axioms(cfg),
        stratification(cfg),
        germ_dimensions(cfg),
        tangent_dichotomy(cfg),
        recover_roundtrip(cfg),
        age_oracle(cfg),
        discrepancy_table(cfg),
        gorenstein_torsion(cfg),
        divisor_strata(cfg),
    ]
}

pub fn partition_counts(cfg: &VerifyConfig) -> SuiteReport {
    let ms: Vec<u32> = (1..=cfg.max_m).collect();
    run("partition-counts", None, || {
        merge(cfg.exec.map(&ms, |&m| {
            let mut fails = Vec::new();
            let all = enumerate_partitions(m)?;
            let count = partition_count(m)?;
            let mut checks = 1;
            if all.len() as u128 != count {
                fails.push(format!("m={m}: enumerated {} but p(m)={count}", all.len()));
            }
            if m <= oracle::MAX_BRUTE_TOTAL {
                checks += 1;
                if oracle::partitions_brute(m)? != all {
                    fails.push(format!("m={m}: enumeration differs from brute force"));
                }
            }
            for k in 1..=m {
                checks += 1;
                let got = level_set(m, k)?.len() as u128;
                let want = oracle::level_count(m, k);
                if got != want {
                    fails.push(format!("m={m} k={k}: level set has {got}, recurrence {want}"));
                }
            }
            Ok((checks, fails))
        }))
    })
}

pub fn refinement(cfg: &VerifyConfig) -> SuiteReport {
    let top = cfg.max_m.min(REFINEMENT_MAX_M);
    let pairs = all_pairs(1..=top);
    run("refinement", clamp_note(cfg.max_m, REFINEMENT_MAX_M), || {
        merge(cfg.exec.map(&pairs, |(f, c)| {
            let fast = refines(f, c)?;
            let slow = oracle::refines_exhaustive(f, c)?;
            let nonempty = !enumerate_refinements(f, c)?.is_empty();
            let mut fails = Vec::new();
            if fast != slow {
                fails.push(format!("refines{f}{c}: solver {fast}, exhaustive {slow}"));
            }
            if nonempty != slow {
                fails.push(format!("classes{f}{c}: nonempty {nonempty}, exhaustive {slow}"));
            }
            Ok((2, fails))
        }))
    })
}

fn all_pairs(ms: std::ops::RangeInclusive<u32>) -> Vec<(Partition, Partition)> {
    let mut pairs = Vec::new();
    for m in ms {
        let ps = enumerate_partitions(m).expect("m >= 1");
        for a in &ps {
            for b in &ps {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    pairs
}

/// Order axioms, extremes, antitone rank and Hasse closure for one `m`.
pub fn check_poset(m: u32, exec: Exec) -> Result<Tally> {
    let poset = build_poset_with(m, exec)?;
    let nodes = poset.nodes();
    let n = nodes.len();
    let mut ge = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            ge[i][j] = order_ge(&nodes[i], &nodes[j])?;
        }
    }
    let mut fails = Vec::new();
    let mut checks = 0u64;
    for i in 0..n {
        checks += 1;
        if !ge[i][i] {
            fails.push(format!("m={m}: not reflexive at {}", nodes[i]));
        }
        for j in 0..n {
            checks += 2;
            if i != j && ge[i][j] && ge[j][i] {
                fails.push(format!("m={m}: antisymmetry fails for {} {}", nodes[i], nodes[j]));
            }
            if ge[i][j] && i != j && nodes[i].len() >= nodes[j].len() {
                fails.push(format!("m={m}: {} > {} without fewer parts", nodes[i], nodes[j]));
            }
            if !ge[i][j] {
                continue;
            }
            for k in 0..n {
                checks += 1;
                if ge[j][k] && !ge[i][k] {
                    fails.push(format!("m={m}: transitivity fails at {} {} {}", nodes[i], nodes[j], nodes[k]));
                }
            }
        }
    }
    checks += 2;
    let top = Partition::single(m)?;
    let bottom = Partition::ones(m)?;
    let maxima: Vec<usize> = (0..n).filter(|&i| (0..n).all(|j| ge[i][j])).collect();
    let minima: Vec<usize> = (0..n).filter(|&i| (0..n).all(|j| ge[j][i])).collect();
    if maxima.len() != 1 || nodes[maxima[0]] != top || poset.maximum() != &top {
        fails.push(format!("m={m}: unique maximum is not ({m})"));
    }
    if minima.len() != 1 || nodes[minima[0]] != bottom || poset.minimum() != &bottom {
        fails.push(format!("m={m}: unique minimum is not (1,...,1)"));
    }
    // reflexive-transitive closure of the Hasse edges
    let index = |p: &Partition| nodes.iter().position(|x| x == p).expect("edge endpoint is a node");
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for (lo, up) in poset.hasse_edges() {
        reach[index(up)][index(lo)] = true;
    }
    for k in 0..n {
        let via = reach[k].clone();
        for row in reach.iter_mut() {
            if row[k] {
                for (cell, &step) in row.iter_mut().zip(&via) {
                    *cell |= step;
                }
            }
        }
    }
    checks += 1;
    if reach != ge {
        fails.push(format!("m={m}: Hasse closure differs from the order"));
    }
    Ok((checks, fails))
}

pub fn poset_axioms(cfg: &VerifyConfig) -> SuiteReport {
    let ms: Vec<u32> = (1..=cfg.max_m).collect();
    run("poset-axioms", None, || merge(cfg.exec.map(&ms, |&m| check_poset(m, cfg.exec))))
}

/// Closed-form chain `Sing^0, …, Sing^m` for one `(m, n)`.
pub fn closed_form_chain(m: u32, n: u32, fault: Option<Fault>) -> Result<Vec<Vec<Partition>>> {
    let mut chain = Vec::new();
    for t in 0..=m {
        let mut level = iterated_singular_locus(m, n, t)?.maximal_strata().to_vec();
        if t == 1 && fault == Some(Fault::FlipLevel) {
            level.clear();
        }
        chain.push(level);
    }
    Ok(chain)
}

pub fn check_chain(m: u32, n: u32, fault: Option<Fault>) -> Result<Tally> {
    let closed = closed_form_chain(m, n, fault)?;
    let recursive: Vec<Vec<Partition>> = oracle::singular_chain_recursive(m, n)?
        .into_iter()
        .map(|s| s.maximal_strata().to_vec())
        .collect();
    let mut fails = Vec::new();
    if closed != recursive {
        let t = closed
            .iter()
            .zip(&recursive)
            .position(|(a, b)| a != b)
            .unwrap_or(closed.len().min(recursive.len()));
        fails.push(format!("m={m} n={n}: chains differ first at t={t}"));
    }
    let mut checks = closed.len() as u64;
    for (t, level) in closed.iter().enumerate() {
        checks += 2;
        if !is_antichain(level) {
            fails.push(format!("m={m} t={t}: level is not an antichain"));
        }
        let dim = iterated_singular_locus(m, n, t as u32)?.generic_dimension();
        let want = (t < m as usize).then(|| n as u64 * (m as u64 - t as u64));
        if dim != want {
            fails.push(format!("m={m} n={n} t={t}: dim {dim:?}, expected {want:?}"));
        }
    }
    Ok((checks, fails))
}

pub fn stratification(cfg: &VerifyConfig) -> SuiteReport {
    if cfg.max_n < 2 {
        return vacuous("stratification", "max-n < 2");
    }
    let top = cfg.max_m.min(CHAIN_MAX_M);
    let jobs: Vec<(u32, u32)> = (1..=top).flat_map(|m| (2..=cfg.max_n).map(move |n| (m, n))).collect();
    run("stratification", clamp_note(cfg.max_m, CHAIN_MAX_M), || {
        merge(cfg.exec.map(&jobs, |&(m, n)| check_chain(m, n, cfg.fault)))
    })
}

pub fn check_germs(m: u32, n: u32) -> Result<Tally> {
    let ps = enumerate_partitions(m)?;
    let mut fails = Vec::new();
    let mut checks = 0;
    for point in &ps {
        for target in &ps {
            if !order_ge(point, target)? {
                continue;
            }
            let comps = preimage_decomposition(m, n, point, target)?;
            let classes = enumerate_refinements(target, point)?.len();
            checks += 1 + comps.len() as u64;
            if comps.len() != classes || comps.is_empty() {
                fails.push(format!("{point}>={target}: {} components, {classes} classes", comps.len()));
            }
            let want = n as u64 * target.len() as u64;
            for c in &comps {
                if c.dimension() != want {
                    fails.push(format!("{point}>={target}: component {c} has dim {}, want {want}", c.dimension()));
                }
            }
        }
    }
    Ok((checks, fails))
}

pub fn germ_dimensions(cfg: &VerifyConfig) -> SuiteReport {
    if cfg.max_n < 2 {
        return vacuous("germ-dimensions", "max-n < 2");
    }
    let top = cfg.max_m.min(GERM_MAX_M);
    let jobs: Vec<(u32, u32)> = (1..=top).flat_map(|m| (2..=cfg.max_n).map(move |n| (m, n))).collect();
    run("germ-dimensions", clamp_note(cfg.max_m, GERM_MAX_M), || {
        merge(cfg.exec.map(&jobs, |&(m, n)| check_germs(m, n)))
    })
}

pub fn tangent_dichotomy(cfg: &VerifyConfig) -> SuiteReport {
    if cfg.max_n < 2 {
        return vacuous("tangent-dichotomy", "max-n < 2");
    }
    let jobs: Vec<(u32, u32)> = (1..=cfg.max_m).flat_map(|m| (2..=cfg.max_n).map(move |n| (m, n))).collect();
    run("tangent-dichotomy", None, || {
        merge(cfg.exec.map(&jobs, |&(m, n)| {
            let mut fails = Vec::new();
            let ps = enumerate_partitions(m)?;
            let nm = num_bigint::BigUint::from(n as u64 * m as u64);
            for pi in &ps {
                let t = tangent_space_dim(n, pi)?.0;
                let ok = if pi.is_ones() { t == nm } else { t > nm };
                if !ok {
                    fails.push(format!("n={n} {pi}: tangent {t} vs nm {nm}"));
                }
            }
            Ok((ps.len() as u64, fails))
        }))
    })
}

pub fn recover_roundtrip(cfg: &VerifyConfig) -> SuiteReport {
    if cfg.max_m < 2 || cfg.max_n < 2 {
        return vacuous("recover-roundtrip", "needs max-m >= 2 and max-n >= 2");
    }
    run("recover-roundtrip", None, || {
        let mut fails = Vec::new();
        let mut checks = 0;
        for m in 2..=cfg.max_m {
            for n in 2..=cfg.max_n {
                let dims: Vec<u64> = (0..m)
                    .map(|t| {
                        iterated_singular_locus(m, n, t)
                            .ok()
                            .and_then(|s| s.generic_dimension())
                            .unwrap_or(0)
                    })
                    .collect();
                checks += 1;
                match recover_parameters(&dims) {
                    Ok(got) if got == (m, n) => {}
                    other => fails.push(format!("m={m} n={n}: chain {dims:?} recovered as {other:?}")),
                }
                // corrupt the chain in three ways
                let mut skewed = dims.clone();
                skewed[0] += 1;
                let mut truncated = dims.clone();
                truncated.pop();
                let mut extended = dims.clone();
                extended.push(0);
                // a one-entry chain [d] is valid for (1, d)
                for bad in [skewed, truncated, extended] {
                    if bad.len() < 2 {
                        continue;
                    }
                    checks += 1;
                    if recover_parameters(&bad).is_ok() {
                        fails.push(format!("malformed chain {bad:?} accepted"));
                    }
                }
            }
        }
        (checks, fails)
    })
}

pub fn age_oracle(cfg: &VerifyConfig) -> SuiteReport {
    if cfg.max_n < 2 {
        return vacuous("age-oracle", "max-n < 2");
    }
    let ms: Vec<u32> = (1..=cfg.max_m).collect();
    run("age-oracle", None, || {
        merge(cfg.exec.map(&ms, |&m| {
            let mut fails = Vec::new();
            let mut checks = 0;
            for n in 2..=cfg.max_n {
                for lambda in enumerate_partitions(m)? {
                    checks += 1;
                    let closed = age(n, &CycleType::new(lambda.clone()))?;
                    let eigen = oracle::age_eigen(n, &lambda);
                    if closed != eigen {
                        fails.push(format!("n={n} {lambda}: closed {closed}, eigen {eigen}"));
                    }
                }
                // additivity over concatenation with every smaller cycle type
                for m1 in 1..m {
                    for a in enumerate_partitions(m1)? {
                        for b in enumerate_partitions(m - m1)? {
                            checks += 1;
                            let mut parts = a.parts().to_vec();
                            parts.extend_from_slice(b.parts());
                            let joined = CycleType::new(Partition::new(parts)?);
                            let lhs = age(n, &joined)?;
                            let rhs = age(n, &CycleType::new(a.clone()))? + age(n, &CycleType::new(b.clone()))?;
                            if lhs != rhs {
                                fails.push(format!("n={n}: age not additive for {a} + {b}"));
                            }
                        }
                    }
                }
            }
            Ok((checks, fails))
        }))
    })
}

/// Discrepancy by the stated table: 0 for n = 2, 1/2 for n = 3, 1 for n ≥ 4.
pub fn discrepancy_table_value(n: u32) -> Rational {
    match n {
        2 => Rational::zero(),
        3 => Rational::new(1, 2),
        _ => Rational::one(),
    }
}

pub fn discrepancy_table(cfg: &VerifyConfig) -> SuiteReport {
    if cfg.max_m < 2 || cfg.max_n < 2 {
        return vacuous("discrepancy", "needs max-m >= 2 and max-n >= 2");
    }
    run("discrepancy", None, || {
        let mut fails = Vec::new();
        let mut checks = 0;
        for m in 2..=cfg.max_m {
            for n in 2..=cfg.max_n {
                checks += 3;
                match discrepancy(m, n) {
                    Ok(d) if d == discrepancy_table_value(n) => {}
                    other => fails.push(format!("m={m} n={n}: discrepancy {other:?}")),
                }
                match singularity_class(m, n) {
                    Ok(c) if c.canonical && c.terminal == (n >= 3) => {}
                    other => fails.push(format!("m={m} n={n}: class {other:?}")),
                }
                let transposition = CycleType::transposition(m).and_then(|t| age(n, &t));
                if transposition != Ok(Rational::new(n as i64, 2)) {
                    fails.push(format!("m={m} n={n}: transposition age {transposition:?}"));
                }
            }
        }
        (checks, fails)
    })
}

pub fn gorenstein_torsion(cfg: &VerifyConfig) -> SuiteReport {
    if cfg.max_n < 2 {
        return vacuous("gorenstein-torsion", "max-n < 2");
    }
    run("gorenstein-torsion", None, || {
        let mut fails = Vec::new();
        for n in 2..=cfg.max_n {
            let g = is_gorenstein(n);
            let bit = class_group_report(n).map(|r| r.canonical_class.torsion);
            match (g, bit) {
                (Ok(g), Ok(bit)) if g == (bit == 0) && g == (n % 2 == 0) => {}
                other => fails.push(format!("n={n}: {other:?}")),
            }
        }
        ((cfg.max_n - 1) as u64, fails)
    })
}

pub fn divisor_strata(cfg: &VerifyConfig) -> SuiteReport {
    let top = cfg.max_m.min(DIVISOR_MAX_M);
    run("divisor-strata", clamp_note(cfg.max_m, DIVISOR_MAX_M), || {
        let mut fails = Vec::new();
        for m in 1..=top {
            let fast: Option<std::collections::BTreeSet<Vec<(u32, u32)>>> = enumerate_divisor_strata(m)
                .ok()
                .map(|v| v.into_iter().map(|s| s.pairs().to_vec()).collect());
            let slow = oracle::divisor_strata_exhaustive(m).ok();
            if fast.is_none() || fast != slow {
                fails.push(format!("m={m}: divisor strata differ from exhaustive search"));
            }
        }
        (top as u64, fails)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(max_m: u32, max_n: u32, fault: Option<Fault>) -> VerifyConfig {
        VerifyConfig {
            max_m,
            max_n,
            exec: Exec::Parallel,
            fault,
        }
    }

    #[test]
    fn small_scale_passes() {
        for r in run_all(&cfg(6, 3, None)) {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
            assert!(r.checks > 0, "{}", r.name);
        }
    }

    #[test]
    fn fault_is_caught_by_stratification_only() {
        let reports = run_all(&cfg(5, 3, Some(Fault::FlipLevel)));
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
        assert_eq!(failed, vec!["stratification"]);
    }

    #[test]
    fn vacuous_scale() {
        for r in run_all(&cfg(1, 3, None)) {
            assert!(r.passed(), "{}", r.name);
        }
    }
}
