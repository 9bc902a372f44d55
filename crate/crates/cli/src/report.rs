//! Subcommand execution and report rendering.

use std::fmt;
use std::path::Path;

use causex_core::axioms::{self, Axiom, AxiomCheck, IndexProcedure, PartitionVector};
use causex_core::causes::{minimal_causes, quasi_minimal_causes};
use causex_core::indices::{compute_index, IndexKind, IndexVector, Scale};
use causex_core::io::{estimate_json, family_json, index_json, parse_problem, to_canonical_string, Problem};
use causex_core::rational;
use causex_core::sampling::{estimate_index, EstimateReport, SamplingConfig};
use causex_core::{CauseFamily, Error};
use clap::ValueEnum;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::{Command, FamilyArg};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Why a run stopped; each class has its own exit code.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Capacity(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Capacity(_) => 3,
            Failure::Internal(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(m) => write!(f, "{m}"),
            Failure::Capacity(m) => write!(f, "{m}"),
            Failure::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            other => Failure::Validation(other.to_string()),
        }
    }
}

/// Provenance embedded in every report.
struct Manifest {
    input: Option<String>,
    digest: Option<String>,
    subcommand: &'static str,
    config: Value,
}

impl Manifest {
    fn to_json(&self) -> Value {
        json!({
            "input": self.input,
            "input_sha256": self.digest,
            "subcommand": self.subcommand,
            "config": self.config,
            "tool_version": env!("CARGO_PKG_VERSION"),
        })
    }
}

fn load(path: &Path) -> Result<(Problem, String), Failure> {
    let bytes =
        std::fs::read(path).map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
    let digest = format!("{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::Validation(format!("{} is not valid UTF-8", path.display())))?;
    let problem = parse_problem(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    Ok((problem, digest))
}

fn emit(format: Format, manifest: &Manifest, mut body: serde_json::Map<String, Value>, table: String) -> String {
    match format {
        Format::Json => {
            body.insert("manifest".into(), manifest.to_json());
            to_canonical_string(&Value::Object(body))
        }
        Format::Table => format!(
            "{table}# manifest: {}\n",
            serde_json::to_string(&manifest.to_json()).expect("JSON values always serialize")
        ),
    }
}

fn object(value: Value) -> serde_json::Map<String, Value> {
    match value {
        Value::Object(m) => m,
        _ => unreachable!("report bodies are objects"),
    }
}

/// Left-aligned text table.
fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect()));
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

fn names_of(s: causex_core::Coalition, names: &[String]) -> String {
    let v: Vec<&str> = s.iter().map(|i| names[i].as_str()).collect();
    format!("{{{}}}", v.join(", "))
}

fn parse_kind(text: &str) -> Result<IndexKind, Failure> {
    text.parse::<IndexKind>().map_err(Failure::from)
}

pub fn run(command: &Command) -> Result<String, Failure> {
    match command {
        Command::Enumerate { file, kind, format } => enumerate(file, *kind, *format),
        Command::Index {
            file,
            kind,
            scale,
            format,
        } => index(file, kind, scale, *format),
        Command::Estimate {
            file,
            kind,
            epsilon,
            delta,
            samples,
            seed,
            exhaustive,
            format,
        } => estimate(file, kind, *epsilon, *delta, *samples, *seed, *exhaustive, *format),
        Command::VerifyAxioms {
            index,
            axioms,
            trials,
            seed,
            format,
        } => verify_axioms(index, axioms, *trials, *seed, *format),
        Command::PartitionVectors {
            values,
            count,
            max_len,
            max_value,
            seed,
            format,
        } => partition(values, *count, *max_len, *max_value, *seed, *format),
    }
}

fn enumerate(file: &Path, kind: FamilyArg, format: Format) -> Result<String, Failure> {
    let (problem, digest) = load(file)?;
    let family: CauseFamily = match kind {
        FamilyArg::Minimal => minimal_causes(&problem.game)?,
        FamilyArg::QuasiMinimal => quasi_minimal_causes(&problem.game)?,
    };
    let manifest = Manifest {
        input: Some(file.display().to_string()),
        digest: Some(digest),
        subcommand: "enumerate",
        config: json!({ "kind": kind.to_possible_value().expect("no skipped variants").get_name() }),
    };
    let mut body = object(family_json(&family, &problem.names));
    if let Some(setup) = &problem.causal {
        let witnesses: Vec<Value> = family
            .causes()
            .iter()
            .map(|s| json!(setup.value.witness(*s)))
            .collect();
        body.insert("witnesses".into(), Value::Array(witnesses));
    }
    let rows: Vec<Vec<String>> = family
        .iter()
        .enumerate()
        .map(|(k, (s, x))| vec![(k + 1).to_string(), names_of(s, &problem.names), names_of(x, &problem.names)])
        .collect();
    Ok(emit(format, &manifest, body, render_table(&["#", "cause", "critical"], &rows)))
}

fn index(file: &Path, kind: &str, scale: &str, format: Format) -> Result<String, Failure> {
    let (problem, digest) = load(file)?;
    let scale: Scale = scale.parse()?;
    let kinds: Vec<IndexKind> = if kind == "all" { IndexKind::ALL.to_vec() } else { vec![parse_kind(kind)?] };
    let vectors = kinds
        .iter()
        .map(|&k| compute_index(&problem.game, k, scale))
        .collect::<Result<Vec<IndexVector>, Error>>()?;
    let manifest = Manifest {
        input: Some(file.display().to_string()),
        digest: Some(digest),
        subcommand: "index",
        config: json!({
            "kinds": kinds.iter().map(|k| k.name()).collect::<Vec<_>>(),
            "scale": scale.name(),
        }),
    };
    let body = json!({
        "n": problem.n(),
        "features": problem.names,
        "indices": vectors.iter().map(|v| index_json(v, &problem.names)).collect::<Vec<_>>(),
    });
    let mut table = String::new();
    for v in &vectors {
        table.push_str(&format!("{} ({})\n", v.kind.name(), v.scale.name()));
        let rows: Vec<Vec<String>> = v
            .ranking()
            .into_iter()
            .map(|i| {
                vec![
                    (i + 1).to_string(),
                    problem.names[i].clone(),
                    rational::to_string(&v.values[i]),
                    format!("{:.6}", rational::to_f64(&v.values[i])),
                ]
            })
            .collect();
        table.push_str(&render_table(&["feature", "name", "exact", "value"], &rows));
        table.push('\n');
    }
    Ok(emit(format, &manifest, object(body), table))
}

#[allow(clippy::too_many_arguments)]
fn estimate(
    file: &Path,
    kind: &str,
    epsilon: f64,
    delta: f64,
    samples: Option<u64>,
    seed: u64,
    exhaustive: bool,
    format: Format,
) -> Result<String, Failure> {
    let (problem, digest) = load(file)?;
    let kind = parse_kind(kind)?;
    let n = problem.n();
    let config = if exhaustive {
        SamplingConfig::exhaustive(n)?
    } else if let Some(m) = samples {
        SamplingConfig::with_samples(m, seed)?
    } else {
        SamplingConfig::from_bounds(epsilon, delta, n, seed)?
    };
    let report: EstimateReport = estimate_index(&problem.game, kind, &config)?;
    let manifest = Manifest {
        input: Some(file.display().to_string()),
        digest: Some(digest),
        subcommand: "estimate",
        config: json!({
            "kind": kind.name(),
            "scale": Scale::Raw.name(),
            "epsilon": config.epsilon,
            "delta": config.delta,
            "m": config.m,
            "seed": config.seed,
            "exhaustive": config.exhaustive,
        }),
    };
    let mut body = object(estimate_json(&report, &problem.names));
    body.insert("n".into(), json!(n));
    let rows: Vec<Vec<String>> = report
        .estimates
        .ranking()
        .into_iter()
        .map(|i| {
            let v = &report.estimates.values[i];
            vec![
                (i + 1).to_string(),
                problem.names[i].clone(),
                rational::to_string(v),
                format!("{:.6}", rational::to_f64(v)),
                report.hits[i].to_string(),
            ]
        })
        .collect();
    let table = format!(
        "{} estimate, m = {}, seed = {}\n{}",
        kind.name(),
        config.m,
        config.seed,
        render_table(&["feature", "name", "exact", "value", "hits"], &rows)
    );
    Ok(emit(format, &manifest, body, table))
}

fn verify_axioms(index: &str, axioms: &[String], trials: u32, seed: u64, format: Format) -> Result<String, Failure> {
    let procedure: IndexProcedure = index.parse()?;
    let selected: Vec<Axiom> = if axioms.is_empty() {
        procedure.characterizing_axioms()
    } else {
        axioms.iter().map(|a| a.parse::<Axiom>()).collect::<Result<_, _>>()?
    };
    let checks = selected
        .iter()
        .map(|&a| axioms::check_axiom(procedure, a, trials, seed))
        .collect::<Result<Vec<AxiomCheck>, Error>>()?;
    for c in &checks {
        if let Some(w) = &c.witness {
            if !w.recheck(procedure, c.axiom)? {
                return Err(Failure::Internal(format!("the {} witness does not reproduce", c.axiom.code())));
            }
        }
    }
    let manifest = Manifest {
        input: None,
        digest: None,
        subcommand: "verify-axioms",
        config: json!({
            "index": procedure.name(),
            "axioms": selected.iter().map(|a| a.code()).collect::<Vec<_>>(),
            "trials": trials,
            "seed": seed,
        }),
    };
    let body = json!({
        "all_passed": checks.iter().all(AxiomCheck::passed),
        "verdicts": checks.iter().map(AxiomCheck::to_json).collect::<Vec<_>>(),
    });
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            vec![
                c.axiom.code().to_string(),
                c.checked.to_string(),
                c.equality_cases.to_string(),
                c.verdict.name().to_string(),
                c.witness.as_ref().map(|w| w.detail.clone()).unwrap_or_default(),
            ]
        })
        .collect();
    let table = format!(
        "{} over {trials} trials, seed {seed}\n{}",
        procedure.name(),
        render_table(&["axiom", "checked", "equality", "verdict", "witness"], &rows)
    );
    Ok(emit(format, &manifest, object(body), table))
}

fn vector_json(v: &PartitionVector) -> Value {
    json!({
        "values": v.values,
        "total": v.total,
        "expected_count": v.expected_count,
        "minimal_count": v.minimal_count,
        "quasi_count": v.quasi_count,
        "holler_packel_last": causex_core::io::rational_json(&v.holler_packel_last),
        "agrees": v.agrees(),
    })
}

fn partition(
    values: &[u64],
    count: usize,
    max_len: usize,
    max_value: u64,
    seed: u64,
    format: Format,
) -> Result<String, Failure> {
    let (vectors, config) = if values.is_empty() {
        (
            axioms::partition_vectors(count, max_len, max_value, seed)?,
            json!({ "count": count, "max_len": max_len, "max_value": max_value, "seed": seed }),
        )
    } else {
        (vec![axioms::partition_game(values)?], json!({ "values": values }))
    };
    let manifest = Manifest {
        input: None,
        digest: None,
        subcommand: "partition-vectors",
        config,
    };
    let body = json!({
        "all_agree": vectors.iter().all(PartitionVector::agrees),
        "vectors": vectors.iter().map(vector_json).collect::<Vec<_>>(),
    });
    let rows: Vec<Vec<String>> = vectors
        .iter()
        .map(|v| {
            let list: Vec<String> = v.values.iter().map(ToString::to_string).collect();
            vec![
                list.join(","),
                v.total.to_string(),
                v.expected_count.to_string(),
                v.minimal_count.to_string(),
                v.quasi_count.to_string(),
                rational::to_string(&v.holler_packel_last),
            ]
        })
        .collect();
    let table = render_table(&["values", "W", "subsets", "minimal", "quasi", "eta_last"], &rows);
    Ok(emit(format, &manifest, object(body), table))
}
