//! End-to-end runs of the `causex` binary: golden reports, determinism,
//! exit codes and the documented examples.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn causex(args: &[&str], workers: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_causex"));
    cmd.current_dir(crate_dir()).args(args).env_remove("CAUSEX_WORKERS");
    if let Some(w) = workers {
        cmd.env("CAUSEX_WORKERS", w);
    }
    cmd.output().expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = causex(args, None);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    serde_json::from_str(&stdout_ok(args)).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    causex(args, None).status.code().expect("exited normally")
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = crate_dir().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "{name} differs from its golden file");
}

fn values_of(index: &Value) -> Vec<String> {
    index["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["exact"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn golden_reports() {
    let cases: [(&str, &[&str]); 6] = [
        ("enumerate_arsonists.json", &["enumerate", "tests/data/arsonists.json"]),
        (
            "enumerate_quasi_weighted_112.json",
            &["enumerate", "tests/data/weighted_112.json", "--kind", "quasi-minimal"],
        ),
        ("index_weighted_112.json", &["index", "tests/data/weighted_112.json"]),
        (
            "estimate_weighted_10.json",
            &["estimate", "tests/data/weighted_10.json", "--kind", "deegan-packel", "--seed", "7"],
        ),
        ("partition_112.json", &["partition-vectors", "--values", "1,1,2"]),
        (
            "verify_responsibility.json",
            &["verify-axioms", "--index", "responsibility", "--trials", "20", "--seed", "3"],
        ),
    ];
    for (name, args) in cases {
        golden(name, &stdout_ok(args));
    }
    golden(
        "index_arsonists_table.txt",
        &stdout_ok(&["index", "tests/data/arsonists.json", "--kind", "responsibility", "--format", "table"]),
    );
}

#[test]
fn json_keys_are_sorted_at_every_level() {
    for args in [
        vec!["enumerate", "tests/data/arsonists.json"],
        vec!["index", "tests/data/weighted_10.json"],
        vec!["estimate", "tests/data/weighted_112.json", "--kind", "johnston"],
        vec!["verify-axioms", "--index", "shapley", "--trials", "5"],
        vec!["partition-vectors", "--count", "2"],
    ] {
        let text = stdout_ok(&args);
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        // The default serde_json map is ordered, so re-serializing sorts keys.
        let canonical = serde_json::to_string_pretty(&reparsed).unwrap() + "\n";
        assert_eq!(text, canonical, "{args:?}");
    }
}

#[test]
fn every_report_embeds_its_manifest() {
    let r = json_ok(&["estimate", "tests/data/weighted_112.json", "--kind", "holler-packel", "--samples", "100"]);
    let m = &r["manifest"];
    assert_eq!(m["subcommand"], "estimate");
    assert_eq!(m["input"], "tests/data/weighted_112.json");
    assert_eq!(m["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(m["config"]["m"], 100);
    assert_eq!(m["config"]["seed"], 0);
    let bytes = std::fs::read(crate_dir().join("tests/data/weighted_112.json")).unwrap();
    let digest = m["input_sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    // A different input must change the digest.
    let other = json_ok(&["index", "tests/data/arsonists.json"]);
    assert_ne!(other["manifest"]["input_sha256"].as_str().unwrap(), digest);
    assert!(!bytes.is_empty());
}

#[test]
fn arsonist_minimal_causes_by_name() {
    let r = json_ok(&["enumerate", "tests/data/arsonists.json"]);
    let mut causes: Vec<Vec<String>> = r["cause_names"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let mut v: Vec<String> = c.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect();
            v.sort();
            v
        })
        .collect();
    causes.sort();
    assert_eq!(causes, vec![vec!["A1", "A2"], vec!["A1", "U2"], vec!["A2", "U1"], vec!["U1", "U2"]]);
    assert_eq!(r["kind"], "minimal");
    assert_eq!(r["critical"].as_object().unwrap().len(), 4);
}

#[test]
fn example_family_is_echoed() {
    let r = json_ok(&["enumerate", "tests/data/deegan_packel_v_prime.json"]);
    assert_eq!(r["causes"], serde_json::json!([[1, 2], [1, 3], [1, 4]]));
}

#[test]
fn documented_index_values() {
    let r = json_ok(&[
        "index",
        "tests/data/deegan_packel_v_prime.json",
        "--kind",
        "deegan-packel",
        "--scale",
        "per-cause",
    ]);
    assert_eq!(r["indices"][0]["values"][0]["value"], 1.5);
    let r = json_ok(&["index", "tests/data/arsonists.json", "--kind", "responsibility"]);
    let by_name: Vec<(String, String)> = r["indices"][0]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| (row["name"].as_str().unwrap().to_string(), row["exact"].as_str().unwrap().to_string()))
        .collect();
    assert!(by_name.contains(&("A1".into(), "1/2".into())));
    assert!(by_name.contains(&("A2".into(), "1/2".into())));
    let r = json_ok(&["index", "tests/data/weighted_112.json", "--kind", "shapley"]);
    assert_eq!(values_of(&r["indices"][0]), vec!["1/6", "1/6", "2/3"]);
}

#[test]
fn table_is_sorted_by_value_with_feature_tiebreak() {
    let text = stdout_ok(&["index", "tests/data/weighted_112.json", "--kind", "banzhaf", "--format", "table"]);
    let features: Vec<&str> = text
        .lines()
        .skip(3)
        .take(3)
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(features, vec!["3", "1", "2"]);
}

#[test]
fn estimate_derives_sample_count_from_bounds() {
    let r = json_ok(&[
        "estimate",
        "tests/data/weighted_10.json",
        "--kind",
        "johnston",
        "--epsilon",
        "0.05",
        "--delta",
        "0.05",
    ]);
    assert_eq!(r["config"]["m"], 2397);
    assert_eq!(r["config"]["epsilon"], 0.05);
    assert_eq!(r["config"]["delta"], 0.05);
}

#[test]
fn estimates_are_byte_identical_across_runs_and_worker_counts() {
    let args = ["estimate", "tests/data/weighted_10.json", "--kind", "johnston", "--seed", "42"];
    let base = causex(&args, None).stdout;
    assert_eq!(causex(&args, None).stdout, base);
    for w in ["1", "3", "8"] {
        assert_eq!(causex(&args, Some(w)).stdout, base, "workers = {w}");
    }
}

#[test]
fn exhaustive_responsibility_matches_exact_index() {
    for file in ["tests/data/arsonists.json", "tests/data/weighted_10.json"] {
        let est = json_ok(&["estimate", file, "--kind", "responsibility", "--exhaustive"]);
        let exact = json_ok(&["index", file, "--kind", "responsibility"]);
        let est_values: Vec<String> = est["estimates"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["exact"].as_str().unwrap().to_string())
            .collect();
        assert_eq!(est_values, values_of(&exact["indices"][0]), "{file}");
    }
}

#[test]
fn verify_axioms_reports_stored_witnesses() {
    let r = json_ok(&["verify-axioms", "--index", "holler-packel", "--axioms", "ISM", "--trials", "200"]);
    assert_eq!(r["all_passed"], false);
    assert_eq!(r["verdicts"][0]["verdict"], "fail");
    assert!(r["verdicts"][0]["witness"]["instance"]["games"].is_array());
    let r = json_ok(&["verify-axioms", "--index", "holler-packel", "--trials", "50"]);
    assert_eq!(r["all_passed"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["index", "tests/data/weighted_112.json"]), 0);
    assert_eq!(exit_code(&["index", "tests/data/malformed.json"]), 2);
    assert_eq!(exit_code(&["index", "tests/data/missing.json"]), 2);
    assert_eq!(exit_code(&["index", "tests/data/weighted_112.json", "--kind", "nope"]), 2);
    assert_eq!(exit_code(&["estimate", "tests/data/weighted_112.json", "--kind", "shapley"]), 2);
    assert_eq!(exit_code(&["verify-axioms", "--index", "shapley", "--axioms", "E"]), 2);
    assert_eq!(exit_code(&["enumerate", "tests/data/too_large.json"]), 3);
    assert_eq!(exit_code(&["estimate", "tests/data/too_large.json", "--kind", "johnston", "--exhaustive"]), 3);
    // Sampling has no exhaustive cap.
    assert_eq!(exit_code(&["estimate", "tests/data/too_large.json", "--kind", "johnston", "--samples", "64"]), 0);
    let bad_workers = causex(&["index", "tests/data/weighted_112.json"], Some("zero"));
    assert_eq!(bad_workers.status.code(), Some(2));
}

#[test]
fn malformed_input_reports_its_position() {
    let out = causex(&["enumerate", "tests/data/malformed.json"], None);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 1 column"), "{err}");
    assert!(Path::new(&crate_dir().join("tests/data/malformed.json")).exists());
}
