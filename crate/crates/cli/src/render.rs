//! Text, JSON and DOT renderings for each command. Every renderer returns the
//! complete output so the caller can write it in one go.

use std::fmt::Write as _;

use serde::Serialize;
use symstrat::verify::{self, VerifyConfig};
use symstrat::{
    build_poset_with, enumerate_divisor_strata, enumerate_partitions, invariant_report,
    is_germ_singular, iterated_singular_locus, local_model, parse_partition, preimage_decomposition,
    recover_parameters, smooth_stratum_decomposition, stratum, Exec, GermModel, GermStratumProduct,
    Partition, Result, Stratum,
};

use crate::Format;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(headers.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn set_label(set: &[Partition]) -> String {
    let inner: Vec<String> = set.iter().map(Partition::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

#[derive(Serialize)]
struct StrataRow {
    #[serde(flatten)]
    stratum: Stratum,
    parts: usize,
    germ_singular: bool,
}

pub fn strata(m: u32, n: u32, format: Format) -> Result<String> {
    let rows = enumerate_partitions(m)?
        .iter()
        .map(|pi| {
            Ok(StrataRow {
                stratum: stratum(m, n, pi)?,
                parts: pi.len(),
                germ_singular: is_germ_singular(pi),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match format {
        Format::Json => json(&rows),
        _ => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let s = &r.stratum;
                    vec![
                        s.pi().to_string(),
                        r.parts.to_string(),
                        s.dimension().to_string(),
                        s.codimension().to_string(),
                        s.normalization_label(),
                        s.tangent_dimension().to_string(),
                        if r.germ_singular { "singular" } else { "smooth" }.to_string(),
                    ]
                })
                .collect();
            table(
                &["pi", "|pi|", "dim", "codim", "normalization", "tangent_dim", "germ"],
                &cells,
            )
        }
    })
}

pub fn poset(m: u32, format: Format, exec: Exec) -> Result<String> {
    let poset = build_poset_with(m, exec)?;
    Ok(match format {
        Format::Json => json(&poset),
        Format::Dot => poset.to_dot(),
        Format::Table => {
            let mut out = format!(
                "partitions of {m}: {} nodes, {} cover relations\n",
                poset.nodes().len(),
                poset.hasse_edges().len()
            );
            for (lo, up) in poset.hasse_edges() {
                let _ = writeln!(out, "{lo} < {up}");
            }
            out
        }
    })
}

#[derive(Serialize)]
struct ChainEntry {
    t: u32,
    antichain: Vec<Partition>,
    dim: Option<u64>,
    pieces: usize,
}

pub fn singular_chain(m: u32, n: u32, format: Format, exec: Exec) -> Result<String> {
    if m == 0 {
        return Err(symstrat::Error::TotalTooSmall { min: 1, got: 0 });
    }
    let ts: Vec<u32> = (0..=m).collect();
    let entries = exec
        .map(&ts, |&t| -> Result<ChainEntry> {
            let set = iterated_singular_locus(m, n, t)?;
            let pieces = if t < m {
                smooth_stratum_decomposition(m, n, t)?.len()
            } else {
                0
            };
            Ok(ChainEntry {
                t,
                dim: set.generic_dimension(),
                antichain: set.maximal_strata().to_vec(),
                pieces,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(match format {
        Format::Json => json(&entries),
        _ => {
            let cells: Vec<Vec<String>> = entries
                .iter()
                .map(|e| {
                    vec![
                        e.t.to_string(),
                        if e.antichain.is_empty() {
                            "empty".to_string()
                        } else {
                            set_label(&e.antichain)
                        },
                        e.dim.map_or("-".to_string(), |d| d.to_string()),
                        e.pieces.to_string(),
                    ]
                })
                .collect();
            table(&["t", "Sing^t", "dim", "pieces"], &cells)
        }
    })
}

#[derive(Serialize)]
struct GermReport {
    m: u32,
    n: u32,
    #[serde(rename = "type")]
    point: Partition,
    model: GermModel,
    germ_singular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<Vec<GermStratumProduct>>,
}

pub fn germ(m: u32, n: u32, point: &str, target: Option<&str>, format: Format) -> Result<String> {
    let point = parse_partition(point)?;
    let model = local_model(m, n, &point)?;
    let (target, components) = match target {
        Some(t) => {
            let t = parse_partition(t)?;
            let comps = preimage_decomposition(m, n, &point, &t)?;
            (Some(t), Some(comps))
        }
        None => (None, None),
    };
    let report = GermReport {
        m,
        n,
        germ_singular: is_germ_singular(&point),
        point,
        model,
        target,
        components,
    };
    Ok(match format {
        Format::Json => json(&report),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "point type {} in S^{m} Y, dim Y = {n}", report.point);
            let _ = writeln!(out, "local model: {} (dim {})", report.model, report.model.dimension());
            let _ = writeln!(
                out,
                "germ W^g_{{{},{m}}}: {}",
                report.point,
                if report.germ_singular { "singular" } else { "smooth" }
            );
            if let (Some(t), Some(comps)) = (&report.target, &report.components) {
                let _ = writeln!(out, "preimage of W_{t}: {} component(s)", comps.len());
                for c in comps {
                    let _ = writeln!(out, "  {c}  dim {}", c.dimension());
                }
            }
            out
        }
    })
}

pub fn invariants(m: u32, n: u32, format: Format) -> Result<String> {
    let r = invariant_report(m, n)?;
    Ok(match format {
        Format::Json => json(&r),
        _ => {
            let rows = vec![
                vec!["discrepancy".into(), r.discrepancy.to_string()],
                vec!["canonical".into(), r.canonical.to_string()],
                vec!["terminal".into(), r.terminal.to_string()],
                vec!["gorenstein".into(), r.gorenstein.to_string()],
                vec!["Pic".into(), r.pic.to_string()],
                vec!["Cl".into(), r.cl.to_string()],
                vec!["K_X".into(), r.k_x.to_string()],
                vec!["hypotheses".into(), r.hypotheses.to_string()],
            ];
            let mut out = format!("S^{m} Y, dim Y = {n}\n");
            out.push_str(&table(&["invariant", "value"], &rows));
            out
        }
    })
}

#[derive(Serialize)]
struct Recovered {
    m: u32,
    n: u32,
}

pub fn recover(dims: &[u64], format: Format) -> Result<String> {
    let (m, n) = recover_parameters(dims)?;
    Ok(match format {
        Format::Json => json(&Recovered { m, n }),
        _ => format!("m={m} n={n}\n"),
    })
}

pub fn divisor_strata(m: u32, format: Format) -> Result<String> {
    let strata = enumerate_divisor_strata(m)?;
    Ok(match format {
        Format::Json => json(&strata),
        _ => {
            let mut out = format!("{} divisor strata of degree {m}\n", strata.len());
            for s in &strata {
                let _ = writeln!(out, "{s}");
            }
            out
        }
    })
}

#[derive(Serialize)]
struct SuiteLine<'a> {
    name: &'a str,
    passed: bool,
    checks: u64,
    failures: &'a [String],
    note: Option<&'a str>,
}

/// Runs all suites. Timings go to standard error so standard output stays
/// reproducible.
pub fn verify(cfg: &VerifyConfig, format: Format) -> Result<(String, bool)> {
    if cfg.max_m == 0 {
        return Err(symstrat::Error::TotalTooSmall { min: 1, got: 0 });
    }
    let reports = verify::run_all(cfg);
    for r in &reports {
        eprintln!("{:<20} {:>10.3} ms", r.name, r.elapsed.as_secs_f64() * 1e3);
    }
    let ok = reports.iter().all(|r| r.passed());
    let text = match format {
        Format::Json => {
            let lines: Vec<SuiteLine> = reports
                .iter()
                .map(|r| SuiteLine {
                    name: r.name,
                    passed: r.passed(),
                    checks: r.checks,
                    failures: &r.failures,
                    note: r.note.as_deref(),
                })
                .collect();
            json(&lines)
        }
        _ => {
            let mut out = String::new();
            if cfg.max_m < 2 {
                let _ = writeln!(out, "note: max-m < 2, S^1 Y is smooth; singular-case suites are vacuous");
            }
            for r in &reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let _ = write!(out, "{status} {:<20} checks={}", r.name, r.checks);
                if let Some(note) = &r.note {
                    let _ = write!(out, "  ({note})");
                }
                out.push('\n');
                for f in r.failures.iter().take(5) {
                    let _ = writeln!(out, "    {f}");
                }
            }
            if ok {
                out.push_str("all suites passed\n");
            } else {
                let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
                let _ = writeln!(out, "FAILED: {}", failed.join(", "));
            }
            out
        }
    };
    Ok((text, ok))
}
