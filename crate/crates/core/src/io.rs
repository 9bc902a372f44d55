//! Input files (games and causal models) and key-sorted JSON reports.
//!
//! A game file is `{"type": "weighted_voting" | "truth_table" |
//! "explicit_causes", "n": ..., ...}`; a causal-model file carries
//! `"variables"`, `"output"`, `"point_of_interest"` and `"constraint_set"`.
//! Feature ids are 1-based in every file and report.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::causal::{
    direct_effect_value, total_effect_value, CausalModel, CausalValueGame, ConstraintSet, Effect, VarKind,
    VariableSpec,
};
use crate::causes::CauseFamily;
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{make_explicit_cause_game, make_weighted_voting, GameOracle, TruthTable};
use crate::indices::IndexVector;
use crate::rational::{self, parse_rational, Rational};
use crate::sampling::EstimateReport;

/// A loaded input: the game plus the names of its features.
#[derive(Clone, Debug)]
pub struct Problem {
    pub game: GameOracle,
    pub names: Vec<String>,
    /// Present when the input was a causal model.
    pub causal: Option<CausalSetup>,
}

/// The pieces of a causal-model input behind its value function.
#[derive(Clone, Debug)]
pub struct CausalSetup {
    pub model: CausalModel,
    pub point: Vec<i64>,
    pub constraints: ConstraintSet,
    pub effect: Effect,
    pub value: CausalValueGame,
}

impl Problem {
    pub fn n(&self) -> usize {
        self.game.n()
    }
}

/// Parses a game or causal-model document. Syntax errors report line and column.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(e.to_string()))?;
    let Value::Object(obj) = &doc else {
        return Err(Error::Parse("the document must be a JSON object".into()));
    };
    if obj.contains_key("variables") {
        parse_causal(doc)
    } else if obj.contains_key("type") {
        parse_game(doc)
    } else {
        Err(Error::Parse(
            "expected a game (with \"type\") or a causal model (with \"variables\")".into(),
        ))
    }
}

fn typed<T: for<'de> Deserialize<'de>>(doc: Value, what: &str) -> Result<T> {
    serde_json::from_value(doc).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameDoc {
    #[serde(rename = "type")]
    kind: String,
    n: usize,
    #[serde(default)]
    names: Option<Vec<String>>,
    #[serde(default)]
    weights: Option<Vec<Value>>,
    #[serde(default)]
    threshold: Option<Value>,
    #[serde(default)]
    table: Option<String>,
    #[serde(default)]
    causes: Option<Vec<Vec<usize>>>,
}

/// Exact rational from a decimal string or a JSON integer.
fn exact_number(v: &Value, field: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Error::Parse(format!("{field}: {e}"))),
        Value::Number(x) if x.is_i64() || x.is_u64() => parse_rational(&x.to_string()),
        _ => Err(Error::Parse(format!(
            "{field}: expected a decimal string such as \"0.5\" (JSON floats are not exact), got {v}"
        ))),
    }
}

fn feature_names(n: usize, names: Option<Vec<String>>) -> Result<Vec<String>> {
    let names = names.unwrap_or_else(|| (1..=n).map(|i| i.to_string()).collect());
    if names.len() != n {
        return Err(Error::InvalidGame(format!("{} names given for {n} features", names.len())));
    }
    let mut seen = std::collections::BTreeSet::new();
    if let Some(dup) = names.iter().find(|s| !seen.insert(s.as_str())) {
        return Err(Error::InvalidGame(format!("feature name {dup:?} is repeated")));
    }
    Ok(names)
}

fn missing(field: &str, kind: &str) -> Error {
    Error::Parse(format!("a {kind} game needs \"{field}\""))
}

fn parse_game(doc: Value) -> Result<Problem> {
    let d: GameDoc = typed(doc, "game")?;
    let names = feature_names(d.n, d.names)?;
    let game = match d.kind.as_str() {
        "weighted_voting" => {
            let weights = d.weights.ok_or_else(|| missing("weights", &d.kind))?;
            if weights.len() != d.n {
                return Err(Error::InvalidGame(format!("{} weights given for n = {}", weights.len(), d.n)));
            }
            let weights = weights
                .iter()
                .enumerate()
                .map(|(i, w)| exact_number(w, &format!("weights[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let threshold = exact_number(&d.threshold.ok_or_else(|| missing("threshold", &d.kind))?, "threshold")?;
            make_weighted_voting(weights, threshold)?
        }
        "truth_table" => {
            let hex = d.table.ok_or_else(|| missing("table", &d.kind))?;
            let table = TruthTable::from_hex(d.n, &hex)?;
            table.validate()?;
            GameOracle::new(table)
        }
        "explicit_causes" => {
            let causes = d.causes.ok_or_else(|| missing("causes", &d.kind))?;
            let causes = causes
                .iter()
                .map(|c| {
                    if let Some(&bad) = c.iter().find(|&&i| i == 0 || i > d.n) {
                        return Err(Error::InvalidGame(format!("feature {bad} is outside 1..={}", d.n)));
                    }
                    Ok(Coalition::from_indices(c.iter().map(|i| i - 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            make_explicit_cause_game(d.n, &causes)?
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown game type {other:?}; expected weighted_voting, truth_table or explicit_causes"
            )))
        }
    };
    Ok(Problem {
        game,
        names,
        causal: None,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VariableDoc {
    name: String,
    kind: VarKind,
    domain: Vec<i64>,
    #[serde(default)]
    parents: Vec<String>,
    #[serde(default)]
    table: BTreeMap<String, i64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AssignmentDoc {
    ByName(BTreeMap<String, i64>),
    InOrder(Vec<i64>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ConstraintDoc {
    Keyword(String),
    Points(Vec<AssignmentDoc>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    variables: Vec<VariableDoc>,
    output: String,
    point_of_interest: AssignmentDoc,
    constraint_set: ConstraintDoc,
    #[serde(default)]
    effect: Option<Effect>,
}

/// `"1,0"` to `[1, 0]`; the empty string is the empty tuple.
fn parse_tuple(key: &str, variable: &str) -> Result<Vec<i64>> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("table key {key:?} of {variable} is not a comma-separated integer tuple")))
        })
        .collect()
}

fn assignment(model: &CausalModel, doc: AssignmentDoc, what: &str) -> Result<Vec<i64>> {
    match doc {
        AssignmentDoc::InOrder(values) => {
            if values.len() != model.n() {
                return Err(Error::InvalidArgument(format!(
                    "{what} has {} values for {} features",
                    values.len(),
                    model.n()
                )));
            }
            Ok(values)
        }
        AssignmentDoc::ByName(map) => {
            if let Some(unknown) = map.keys().find(|k| model.feature_index(k).is_none()) {
                return Err(Error::InvalidArgument(format!("{what} names unknown feature {unknown:?}")));
            }
            model
                .feature_names()
                .iter()
                .map(|name| {
                    map.get(name)
                        .copied()
                        .ok_or_else(|| Error::InvalidArgument(format!("{what} has no value for {name:?}")))
                })
                .collect()
        }
    }
}

fn parse_causal(doc: Value) -> Result<Problem> {
    let d: ModelDoc = typed(doc, "causal model")?;
    let specs = d
        .variables
        .into_iter()
        .map(|v| {
            let table = v
                .table
                .iter()
                .map(|(k, &val)| Ok((parse_tuple(k, &v.name)?, val)))
                .collect::<Result<Vec<_>>>()?;
            Ok(VariableSpec {
                name: v.name,
                kind: v.kind,
                domain: v.domain,
                parents: v.parents,
                table,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let model = CausalModel::new(specs, &d.output)?;
    let point = assignment(&model, d.point_of_interest, "point_of_interest")?;
    let constraints = match d.constraint_set {
        ConstraintDoc::Keyword(k) if k == "all_domain_points" => model.all_domain_points()?,
        ConstraintDoc::Keyword(k) => {
            return Err(Error::Parse(format!(
                "constraint_set must be a list of assignments or \"all_domain_points\", got {k:?}"
            )))
        }
        ConstraintDoc::Points(points) => {
            let points = points
                .into_iter()
                .enumerate()
                .map(|(j, p)| assignment(&model, p, &format!("constraint_set[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            ConstraintSet::new(&model, points)?
        }
    };
    let effect = d.effect.unwrap_or(Effect::Total);
    let value = match effect {
        Effect::Total => total_effect_value(&model, &point, &constraints)?,
        Effect::Direct => {
            model.check_assignment(&point)?;
            let f = |z: &[i64]| model.output_of(z).unwrap_or(-1);
            direct_effect_value(model.n(), &f, &point, &constraints)?
        }
    };
    Ok(Problem {
        game: GameOracle::new(value.clone()),
        names: model.feature_names(),
        causal: Some(CausalSetup {
            model,
            point,
            constraints,
            effect,
            value,
        }),
    })
}

/// Exact and floating renderings of a rational.
pub fn rational_json(r: &Rational) -> Value {
    json!({ "exact": rational::to_string(r), "value": rational::to_f64(r) })
}

fn one_based(s: Coalition) -> Vec<usize> {
    s.to_one_based()
}

fn named(s: Coalition, names: &[String]) -> Vec<String> {
    s.iter().map(|i| names[i].clone()).collect()
}

/// `{"kind", "n", "features", "causes", "cause_names", "critical"}` where
/// `critical` maps each cause (`"1,2"`) to its critical features.
pub fn family_json(family: &CauseFamily, names: &[String]) -> Value {
    let key = |s: Coalition| one_based(s).iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let critical: Map<String, Value> = family.iter().map(|(s, x)| (key(s), json!(one_based(x)))).collect();
    json!({
        "kind": match family.kind() {
            crate::causes::FamilyKind::Minimal => "minimal",
            crate::causes::FamilyKind::QuasiMinimal => "quasi-minimal",
        },
        "n": family.n(),
        "features": names,
        "causes": family.causes().iter().map(|s| one_based(*s)).collect::<Vec<_>>(),
        "cause_names": family.causes().iter().map(|s| named(*s, names)).collect::<Vec<_>>(),
        "critical": critical,
    })
}

fn feature_rows(values: &[Rational], names: &[String]) -> Vec<Value> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            json!({
                "feature": i + 1,
                "name": names[i],
                "exact": rational::to_string(v),
                "value": rational::to_f64(v),
            })
        })
        .collect()
}

/// One index vector with per-feature rows and the descending ranking.
pub fn index_json(iv: &IndexVector, names: &[String]) -> Value {
    json!({
        "kind": iv.kind.name(),
        "scale": iv.scale.name(),
        "values": feature_rows(&iv.values, names),
        "ranking": iv.ranking().iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
        "total": rational_json(&iv.total()),
    })
}

pub fn estimate_json(report: &EstimateReport, names: &[String]) -> Value {
    let c = &report.config;
    json!({
        "kind": report.estimates.kind.name(),
        "scale": report.estimates.scale.name(),
        "estimates": feature_rows(&report.estimates.values, names),
        "hits": report.hits,
        "oracle_calls": report.oracle_calls,
        "config": {
            "m": c.m,
            "seed": c.seed,
            "epsilon": c.epsilon,
            "delta": c.delta,
            "exhaustive": c.exhaustive,
        },
    })
}

/// Canonical text of a JSON value: keys sorted, two-space indentation.
pub fn to_canonical_string(value: &Value) -> String {
    // serde_json's default map is ordered, so keys serialize sorted.
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causes::minimal_causes;
    use crate::indices::{compute_index, IndexKind, Scale};
    use crate::rational::ratio;

    const ARSONISTS: &str = r#"{
      "variables": [
        {"name": "U1", "kind": "exogenous", "domain": [0, 1]},
        {"name": "U2", "kind": "exogenous", "domain": [0, 1]},
        {"name": "A1", "kind": "endogenous", "domain": [0, 1], "parents": ["U1"], "table": {"0": 0, "1": 1}},
        {"name": "A2", "kind": "endogenous", "domain": [0, 1], "parents": ["U2"], "table": {"0": 0, "1": 1}},
        {"name": "B", "kind": "endogenous", "domain": [0, 1], "parents": ["A1", "A2"],
         "table": {"0,0": 0, "0,1": 1, "1,0": 1, "1,1": 1}}
      ],
      "output": "B",
      "point_of_interest": {"U1": 1, "U2": 1, "A1": 1, "A2": 1},
      "constraint_set": "all_domain_points"
    }"#;

    #[test]
    fn weighted_voting_file() {
        let p = parse_problem(r#"{"type":"weighted_voting","n":3,"weights":["1","1","2"],"threshold":"2"}"#).unwrap();
        let sh = compute_index(&p.game, IndexKind::Shapley, Scale::Raw).unwrap();
        assert_eq!(sh.values, vec![ratio(1, 6), ratio(1, 6), ratio(2, 3)]);
        assert_eq!(p.names, vec!["1", "2", "3"]);
    }

    #[test]
    fn decimal_weights_are_exact() {
        let p = parse_problem(r#"{"type":"weighted_voting","n":2,"weights":["0.1","0.2"],"threshold":"0.3"}"#).unwrap();
        assert!(p.game.eval(Coalition::full(2)));
        let err = parse_problem(r#"{"type":"weighted_voting","n":2,"weights":[0.1,0.2],"threshold":"0.3"}"#);
        assert!(matches!(err, Err(Error::Parse(_))));
    }

    #[test]
    fn explicit_and_table_files() {
        let p = parse_problem(r#"{"type":"explicit_causes","n":4,"causes":[[1,2],[1,3,4]],"names":["a","b","c","d"]}"#)
            .unwrap();
        let m = minimal_causes(&p.game).unwrap();
        assert_eq!(m.causes().len(), 2);
        let t = parse_problem(r#"{"type":"truth_table","n":2,"table":"8"}"#).unwrap();
        assert!(t.game.eval(Coalition::full(2)));
        assert!(!t.game.eval(Coalition::singleton(0)));
        assert!(parse_problem(r#"{"type":"truth_table","n":2,"table":"2"}"#).is_err());
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_problem("{\n  \"type\": \"truth_table\",\n  \"n\": 2,,\n}").unwrap_err();
        let Error::Parse(msg) = err else { panic!("expected a parse error") };
        assert!(msg.contains("line 3 column"), "{msg}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(parse_problem(r#"{"type":"truth_table","n":2,"table":"8","extra":1}"#).is_err());
    }

    #[test]
    fn arsonist_file_matches_the_builtin_model() {
        let p = parse_problem(ARSONISTS).unwrap();
        let m = minimal_causes(&p.game).unwrap();
        let mut names: Vec<Vec<String>> = m
            .causes()
            .iter()
            .map(|s| {
                let mut c = named(*s, &p.names);
                c.sort();
                c
            })
            .collect();
        names.sort();
        assert_eq!(names, vec![vec!["A1", "A2"], vec!["A1", "U2"], vec!["A2", "U1"], vec!["U1", "U2"]]);
        let builtin = crate::causal::arsonist_model();
        assert_eq!(p.causal.unwrap().model.feature_names(), builtin.feature_names());
    }

    #[test]
    fn inconsistent_point_is_rejected() {
        let bad = ARSONISTS.replace("\"A1\": 1, \"A2\": 1}", "\"A1\": 0, \"A2\": 1}");
        let err = parse_problem(&bad).unwrap_err();
        assert!(err.to_string().contains("A1=1"), "{err}");
    }

    #[test]
    fn family_json_is_key_sorted() {
        let p = parse_problem(r#"{"type":"explicit_causes","n":3,"causes":[[1,2],[1,3]]}"#).unwrap();
        let text = to_canonical_string(&family_json(&minimal_causes(&p.game).unwrap(), &p.names));
        let keys: Vec<usize> = ["\"causes\"", "\"critical\"", "\"features\"", "\"kind\"", "\"n\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{text}");
        assert!(text.contains("\"1,2\""));
    }
}
