//! Command-line front end: stable text and JSON output for scripting and CI.
//!
//! Subcommands: `info`, `transform`, `enum-quasitrees`, `enum-regular`,
//! `enum-cc-petrials`, `enum-rcc`, `oracle`. Exit codes: 0 success, 1 domain
//! error (message names the violated precondition), 2 usage error. All
//! enumeration output is in canonical deterministic order; identical
//! invocations produce byte-identical output unless `--verbose` adds timing.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::RibbonError;
use crate::petrial::{enumerate_cc_petrials_report, IntervalSide};
use crate::pipeline::{enumerate_rcc_twisted_duals, has_cc_twisted_dual};
use crate::presentation::{ArrowPresentation, EdgeLabel, EdgeSet};
use crate::regular::enumerate_regular_partial_duals_witnessed;
use crate::spanning::{canonical_subset_order, spanning_quasi_trees, spanning_trees};
use crate::topology::{
    boundary_component_count, checkerboard_colouring, connected_components, degrees, euler_genus,
    is_eulerian, is_orientable, Colour,
};
use crate::twist::{apply_word, TwistWord};
use crate::{oracle, regular};

const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct RunReport {
    schema_version: u32,
    subcommand: String,
    input_digest: String,
    parameters: Value,
    results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

/// FNV-1a over the input bytes; identifies the input in reports without
/// pulling in a hash dependency.
fn digest(text: &str) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a:{h:016x}")
}

struct Invocation {
    subcommand: String,
    file: Option<String>,
    flags: BTreeMap<String, String>,
    json: bool,
    verbose: bool,
}

fn usage() -> String {
    "usage: ribbon <subcommand> [options] FILE\n\
     subcommands:\n\
       info FILE                          surface invariants as JSON\n\
       transform --word WORD FILE         apply t{..};d{..} groups left to right\n\
       enum-quasitrees FILE [--trees-only]\n\
       enum-regular -k K FILE [--witness]\n\
       enum-cc-petrials FILE [--tree e1,e2,...]\n\
       enum-rcc -k K FILE [--max-witnesses N]\n\
       oracle {regular|cc-petrial|rcc} [-k K] FILE [--check]\n\
     common options: --json, --verbose\n\
     environment: RIBBON_MAX_M overrides the oracle rcc cap (default 5)\n"
        .to_string()
}

fn parse_args(args: &[String]) -> Result<Invocation, String> {
    let mut it = args.iter().peekable();
    let subcommand = match it.next() {
        Some(s) => s.clone(),
        None => return Err("missing subcommand".to_string()),
    };
    let mut inv = Invocation {
        subcommand,
        file: None,
        flags: BTreeMap::new(),
        json: false,
        verbose: false,
    };
    if inv.subcommand == "oracle" {
        let mode = it
            .next()
            .ok_or_else(|| "oracle needs a mode: regular, cc-petrial or rcc".to_string())?;
        inv.flags.insert("mode".to_string(), mode.clone());
    }
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--json" => inv.json = true,
            "--verbose" => inv.verbose = true,
            "--check" => {
                inv.flags.insert("check".to_string(), "true".to_string());
            }
            "--trees-only" => {
                inv.flags
                    .insert("trees-only".to_string(), "true".to_string());
            }
            "--witness" => {
                inv.flags.insert("witness".to_string(), "true".to_string());
            }
            "-k" | "--word" | "--tree" | "--max-witnesses" => {
                let value = it
                    .next()
                    .ok_or_else(|| format!("{arg} needs a value"))?
                    .clone();
                inv.flags
                    .insert(arg.trim_start_matches('-').to_string(), value);
            }
            other if other.starts_with('-') => {
                return Err(format!("unknown option {other}"));
            }
            other => {
                if inv.file.is_some() {
                    return Err(format!("unexpected extra argument {other}"));
                }
                inv.file = Some(other.to_string());
            }
        }
    }
    Ok(inv)
}

fn subset_str(s: &EdgeSet) -> String {
    let names: Vec<&str> = s.iter().map(|e| e.as_str()).collect();
    format!("{{{}}}", names.join(","))
}

fn subset_json(s: &EdgeSet) -> Value {
    Value::Array(
        s.iter()
            .map(|e| Value::String(e.as_str().to_string()))
            .collect(),
    )
}

fn parse_edge_list(s: &str) -> Result<EdgeSet, RibbonError> {
    let mut out = EdgeSet::new();
    for name in s.split(',') {
        let name = name.trim();
        if name.is_empty() {
            continue;
        }
        out.insert(EdgeLabel::new(name)?);
    }
    Ok(out)
}

fn presentation_json(p: &ArrowPresentation) -> Value {
    let canon = p.canonical_form();
    Value::Array(
        canon
            .circles()
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "word": c.word.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn rcc_cap() -> usize {
    std::env::var("RIBBON_MAX_M")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(oracle::DEFAULT_RCC_CAP)
}

/// Runs one invocation, writing to `out`. Returns the process exit code.
pub fn run(args: &[String], out: &mut dyn std::io::Write) -> i32 {
    match run_inner(args, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            let _ = write!(out, "{}", usage());
            2
        }
        Err(CliError::Domain(e)) => {
            let _ = writeln!(out, "error: {e}");
            1
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(out, "error: {e}");
            1
        }
    }
}

enum CliError {
    Usage(String),
    Domain(RibbonError),
    Io(String),
}

impl From<RibbonError> for CliError {
    fn from(e: RibbonError) -> Self {
        CliError::Domain(e)
    }
}

fn load(inv: &Invocation) -> Result<(ArrowPresentation, String), CliError> {
    let path = inv
        .file
        .as_ref()
        .ok_or_else(|| CliError::Usage("missing input file".to_string()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))?;
    let p = ArrowPresentation::parse(&text)?;
    Ok((p, digest(&text)))
}

fn emit_report(
    inv: &Invocation,
    out: &mut dyn std::io::Write,
    input_digest: String,
    parameters: Value,
    results: Value,
    started: Instant,
) -> Result<i32, CliError> {
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        subcommand: inv.subcommand.clone(),
        input_digest,
        parameters,
        results,
        timing_ms: inv.verbose.then(|| started.elapsed().as_millis()),
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    writeln!(out, "{text}").map_err(|e| CliError::Io(e.to_string()))?;
    Ok(0)
}

fn run_inner(args: &[String], out: &mut dyn std::io::Write) -> Result<i32, CliError> {
    let inv = parse_args(args).map_err(CliError::Usage)?;
    let started = Instant::now();
    let mut write = |s: String| -> Result<(), CliError> {
        writeln!(out, "{s}").map_err(|e| CliError::Io(e.to_string()))
    };

    match inv.subcommand.as_str() {
        "help" | "--help" | "-h" => {
            write(usage())?;
            Ok(0)
        }
        "info" => {
            let (p, dig) = load(&inv)?;
            let colouring = checkerboard_colouring(&p).map(|c| {
                c.colours
                    .iter()
                    .map(|col| match col {
                        Colour::Black => "black",
                        Colour::White => "white",
                    })
                    .collect::<Vec<_>>()
            });
            let results = json!({
                "degrees": degrees(&p),
                "boundary_components": boundary_component_count(&p),
                "orientable": is_orientable(&p),
                "euler_genus": euler_genus(&p),
                "eulerian": is_eulerian(&p),
                "checkerboard": colouring,
                "components": connected_components(&p),
            });
            emit_report(&inv, out, dig, json!({}), results, started)
        }
        "transform" => {
            let word: TwistWord = inv
                .flags
                .get("word")
                .ok_or_else(|| CliError::Usage("transform needs --word".to_string()))?
                .parse()?;
            let (p, dig) = load(&inv)?;
            let result = apply_word(&p, &word)?;
            if inv.json {
                emit_report(
                    &inv,
                    out,
                    dig,
                    json!({"word": word.to_string()}),
                    json!({"circles": presentation_json(&result)}),
                    started,
                )
            } else {
                write(result.to_text().trim_end().to_string())?;
                Ok(0)
            }
        }
        "enum-quasitrees" => {
            let (p, dig) = load(&inv)?;
            let subsets = if inv.flags.contains_key("trees-only") {
                spanning_trees(&p)?
            } else {
                spanning_quasi_trees(&p)?
            };
            if inv.json {
                emit_report(
                    &inv,
                    out,
                    dig,
                    json!({"trees_only": inv.flags.contains_key("trees-only")}),
                    Value::Array(subsets.iter().map(subset_json).collect()),
                    started,
                )
            } else {
                for s in subsets {
                    write(subset_str(&s))?;
                }
                Ok(0)
            }
        }
        "enum-regular" => {
            let k: usize = inv
                .flags
                .get("k")
                .ok_or_else(|| CliError::Usage("enum-regular needs -k".to_string()))?
                .parse()
                .map_err(|_| CliError::Usage("-k must be a positive integer".to_string()))?;
            if k == 0 {
                return Err(CliError::Usage("-k must be a positive integer".to_string()));
            }
            let (p, dig) = load(&inv)?;
            let witnessed = enumerate_regular_partial_duals_witnessed(&p, k)?;
            let mut keys: Vec<&EdgeSet> = witnessed.keys().collect();
            keys.sort_by(|a, b| canonical_subset_order(a, b));
            if inv.json {
                let results: Vec<Value> = keys
                    .iter()
                    .map(|a| {
                        let mut entry = json!({"subset": subset_json(a)});
                        if inv.flags.contains_key("witness") {
                            entry["witnesses"] = Value::Array(
                                witnessed[*a]
                                    .iter()
                                    .map(|w| {
                                        json!({
                                            "quasi_tree": subset_json(&w.quasi_tree),
                                            "arcs": w.arcs.iter().map(|arc| json!({
                                                "edge": arc.edge.as_str(),
                                                "start": arc.start,
                                                "len": arc.len,
                                            })).collect::<Vec<_>>(),
                                        })
                                    })
                                    .collect(),
                            );
                        }
                        entry
                    })
                    .collect();
                emit_report(
                    &inv,
                    out,
                    dig,
                    json!({"k": k}),
                    Value::Array(results),
                    started,
                )
            } else {
                for a in keys {
                    if inv.flags.contains_key("witness") {
                        let w = &witnessed[a][0];
                        let arcs: Vec<String> = w
                            .arcs
                            .iter()
                            .map(|arc| format!("{}@{}+{}", arc.edge, arc.start, arc.len))
                            .collect();
                        write(format!(
                            "{}  quasi-tree {}  arcs [{}]",
                            subset_str(a),
                            subset_str(&w.quasi_tree),
                            arcs.join(" ")
                        ))?;
                    } else {
                        write(subset_str(a))?;
                    }
                }
                Ok(0)
            }
        }
        "enum-cc-petrials" => {
            let (p, dig) = load(&inv)?;
            let tree = match inv.flags.get("tree") {
                Some(t) => Some(parse_edge_list(t)?),
                None => None,
            };
            let report = enumerate_cc_petrials_report(&p, tree.as_ref(), IntervalSide::AfterFirst)?;
            if inv.json {
                let results = json!({
                    "tree": subset_json(&report.tree),
                    "base_set": subset_json(&report.base_set),
                    "adjoints": report.adjoints.iter().map(|a| json!({
                        "tree_edge": a.tree_edge.as_str(),
                        "members": subset_json(&a.members),
                    })).collect::<Vec<_>>(),
                    "rows": report.rows.iter().map(|(s, a)| json!({
                        "tree_subset": subset_json(s),
                        "subset": subset_json(a),
                    })).collect::<Vec<_>>(),
                });
                emit_report(&inv, out, dig, json!({}), results, started)
            } else {
                write(format!("base {}", subset_str(&report.base_set)))?;
                for adj in &report.adjoints {
                    write(format!(
                        "adjoint {} {}",
                        adj.tree_edge,
                        subset_str(&adj.members)
                    ))?;
                }
                for (s, a) in &report.rows {
                    write(format!("{} {}", subset_str(s), subset_str(a)))?;
                }
                Ok(0)
            }
        }
        "enum-rcc" => {
            let k: usize = inv
                .flags
                .get("k")
                .ok_or_else(|| CliError::Usage("enum-rcc needs -k".to_string()))?
                .parse()
                .map_err(|_| CliError::Usage("-k must be a positive integer".to_string()))?;
            let max_witnesses: usize = inv
                .flags
                .get("max-witnesses")
                .map(|v| v.parse())
                .transpose()
                .map_err(|_| CliError::Usage("--max-witnesses must be an integer".to_string()))?
                .unwrap_or(usize::MAX);
            let (p, dig) = load(&inv)?;
            let classes = enumerate_rcc_twisted_duals(&p, k)?;
            if inv.json {
                let results: Vec<Value> = classes
                    .values()
                    .map(|class| {
                        json!({
                            "circles": presentation_json(&class.result),
                            "witness_count": class.witnesses.len(),
                            "witnesses": class.witnesses.iter().take(max_witnesses).map(|w| json!({
                                "petrial_first": subset_json(&w.petrial_first),
                                "dual": subset_json(&w.dual),
                                "petrial_second": subset_json(&w.petrial_second),
                            })).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                emit_report(
                    &inv,
                    out,
                    dig,
                    json!({"k": k}),
                    Value::Array(results),
                    started,
                )
            } else {
                for class in classes.values() {
                    write(format!("result ({} witnesses):", class.witnesses.len()))?;
                    for line in class.result.to_text().lines() {
                        write(format!("  {line}"))?;
                    }
                    for w in class.witnesses.iter().take(max_witnesses) {
                        write(format!(
                            "  via t{} d{} t{}",
                            subset_str(&w.petrial_first),
                            subset_str(&w.dual),
                            subset_str(&w.petrial_second)
                        ))?;
                    }
                }
                Ok(0)
            }
        }
        "oracle" => {
            let mode = inv.flags.get("mode").cloned().unwrap_or_default();
            let check = inv.flags.contains_key("check");
            let (p, dig) = load(&inv)?;
            let get_k = || -> Result<usize, CliError> {
                inv.flags
                    .get("k")
                    .ok_or_else(|| CliError::Usage(format!("oracle {mode} needs -k")))?
                    .parse()
                    .map_err(|_| CliError::Usage("-k must be a positive integer".to_string()))
            };
            match mode.as_str() {
                "regular" => {
                    let k = get_k()?;
                    let brute = oracle::brute_regular_duals(&p, k);
                    let mut listed: Vec<&EdgeSet> = brute.iter().collect();
                    listed.sort_by(|a, b| canonical_subset_order(a, b));
                    if check {
                        let found = regular::enumerate_regular_partial_duals(&p, k)?;
                        let found: std::collections::BTreeSet<EdgeSet> =
                            found.into_iter().collect();
                        if found != brute {
                            write("MISMATCH between enumerator and oracle".to_string())?;
                            return Ok(1);
                        }
                        write(format!("OK: {} subsets agree", brute.len()))?;
                        return Ok(0);
                    }
                    if inv.json {
                        return emit_report(
                            &inv,
                            out,
                            dig,
                            json!({"k": k, "mode": "regular"}),
                            Value::Array(listed.iter().map(|s| subset_json(s)).collect()),
                            started,
                        );
                    }
                    for s in listed {
                        write(subset_str(s))?;
                    }
                    Ok(0)
                }
                "cc-petrial" => {
                    let brute = oracle::brute_cc_petrials(&p);
                    let mut listed: Vec<&EdgeSet> = brute.iter().collect();
                    listed.sort_by(|a, b| canonical_subset_order(a, b));
                    if check {
                        let found: std::collections::BTreeSet<EdgeSet> =
                            crate::petrial::enumerate_cc_petrials(&p)?
                                .into_iter()
                                .collect();
                        if found != brute {
                            write("MISMATCH between enumerator and oracle".to_string())?;
                            return Ok(1);
                        }
                        write(format!("OK: {} subsets agree", brute.len()))?;
                        return Ok(0);
                    }
                    if inv.json {
                        return emit_report(
                            &inv,
                            out,
                            dig,
                            json!({"mode": "cc-petrial"}),
                            Value::Array(listed.iter().map(|s| subset_json(s)).collect()),
                            started,
                        );
                    }
                    for s in listed {
                        write(subset_str(s))?;
                    }
                    Ok(0)
                }
                "rcc" => {
                    let k = get_k()?;
                    let brute = oracle::brute_rcc_twisted(&p, k, rcc_cap())?;
                    if check {
                        let classes = enumerate_rcc_twisted_duals(&p, k)?;
                        let found: Vec<_> = classes.keys().collect();
                        let want: Vec<_> = brute.keys().collect();
                        if found != want {
                            write("MISMATCH between enumerator and oracle".to_string())?;
                            return Ok(1);
                        }
                        write(format!("OK: {} canonical results agree", brute.len()))?;
                        return Ok(0);
                    }
                    if inv.json {
                        return emit_report(
                            &inv,
                            out,
                            dig,
                            json!({"k": k, "mode": "rcc"}),
                            Value::Array(brute.values().map(presentation_json).collect()),
                            started,
                        );
                    }
                    for result in brute.values() {
                        write(result.to_text().trim_end().to_string())?;
                        write(String::new())?;
                    }
                    Ok(0)
                }
                other => Err(CliError::Usage(format!(
                    "unknown oracle mode {other:?}; use regular, cc-petrial or rcc"
                ))),
            }
        }
        "has-cc-twisted-dual" => {
            let (p, dig) = load(&inv)?;
            let (ok, w, result) = has_cc_twisted_dual(&p)?;
            if inv.json {
                emit_report(
                    &inv,
                    out,
                    dig,
                    json!({}),
                    json!({
                        "exists": ok,
                        "witness": {
                            "petrial_first": subset_json(&w.petrial_first),
                            "dual": subset_json(&w.dual),
                            "petrial_second": subset_json(&w.petrial_second),
                        },
                        "circles": presentation_json(&result),
                    }),
                    started,
                )
            } else {
                write(format!(
                    "yes: t{} d{} t{}",
                    subset_str(&w.petrial_first),
                    subset_str(&w.dual),
                    subset_str(&w.petrial_second)
                ))?;
                write(result.to_text().trim_end().to_string())?;
                Ok(0)
            }
        }
        other => Err(CliError::Usage(format!("unknown subcommand {other:?}"))),
    }
}
