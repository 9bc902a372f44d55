//! Replay of the argument that no index satisfies minimal monotonicity,
//! efficiency (total 1), symmetry and null feature at once.
//!
//! Every forced value is re-derived from the games themselves: null
//! features are read off the enumerated causes, symmetries are verified by
//! comparing permuted truth tables, and shared feature families are compared
//! as sets.

use num_traits::{One, Zero};

use crate::causes::minimal_causes;
use crate::coalition::{all_coalitions, Coalition};
use crate::error::{Error, Result};
use crate::game::{make_explicit_cause_game, permute, GameOracle};
use crate::rational::{self, ratio, Rational};

/// One forced value with the axioms that force it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Game label (`v`, `v''` or `v'`).
    pub game: String,
    /// 0-based feature.
    pub feature: usize,
    pub value: Rational,
    pub cites: Vec<&'static str>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpossibilityTrace {
    pub n: usize,
    /// Labeled games with their minimal causes.
    pub games: Vec<(String, Vec<Coalition>)>,
    pub steps: Vec<TraceStep>,
    /// Sum over the combined game forced by the steps.
    pub forced_total: Rational,
    /// Sum required by efficiency.
    pub required_total: Rational,
}

impl ImpossibilityTrace {
    pub fn contradiction(&self) -> bool {
        self.forced_total != self.required_total
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (label, causes) in &self.games {
            let list: Vec<String> = causes.iter().map(ToString::to_string).collect();
            out.push_str(&format!("{label}: minimal causes {{{}}}\n", list.join(", ")));
        }
        for s in &self.steps {
            out.push_str(&format!(
                "gamma_{}({}) = {}  [{}] {}\n",
                s.feature + 1,
                s.game,
                rational::to_string(&s.value),
                s.cites.join(", "),
                s.reason
            ));
        }
        out.push_str(&format!(
            "sum over {} = {} but efficiency requires {}\n",
            self.games.last().map_or("", |g| g.0.as_str()),
            rational::to_string(&self.forced_total),
            rational::to_string(&self.required_total)
        ));
        out
    }
}

fn same_game(a: &GameOracle, b: &GameOracle) -> bool {
    a.n() == b.n() && all_coalitions(a.n()).all(|s| a.eval(s) == b.eval(s))
}

fn family_of(causes: &[Coalition], i: usize) -> Vec<Coalition> {
    causes.iter().copied().filter(|s| s.contains(i)).collect()
}

fn invariant(what: &str) -> Error {
    Error::InvalidArgument(format!("impossibility replay failed: {what}"))
}

/// Values forced on a game with the single cause `pair` by NF, S and E.
fn forced_on_pair(
    label: &str,
    game: &GameOracle,
    causes: &[Coalition],
    pair: (usize, usize),
    steps: &mut Vec<TraceStep>,
) -> Result<Vec<Rational>> {
    let n = game.n();
    let mut values = vec![Rational::zero(); n];
    let mut null_total = Rational::zero();
    for (k, value) in values.iter_mut().enumerate() {
        if family_of(causes, k).is_empty() {
            *value = Rational::zero();
            null_total += &*value;
            steps.push(TraceStep {
                game: label.into(),
                feature: k,
                value: value.clone(),
                cites: vec!["NF"],
                reason: format!("feature {} is in no minimal cause", k + 1),
            });
        }
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(pair.0, pair.1);
    if !same_game(&permute(game, &swap)?, game) {
        return Err(invariant("swapping the pair must leave the game unchanged"));
    }
    // S gives equal shares, E makes the total one.
    let share = (Rational::one() - null_total) / ratio(2, 1);
    for k in [pair.0, pair.1] {
        values[k] = share.clone();
        steps.push(TraceStep {
            game: label.into(),
            feature: k,
            value: share.clone(),
            cites: vec!["S", "E", "NF"],
            reason: format!(
                "swapping features {} and {} fixes the game, and the total is 1",
                pair.0 + 1,
                pair.1 + 1
            ),
        });
    }
    Ok(values)
}

/// `n = 4`, `M(v) = {{1,2}}`, `M(v'') = {{3,4}}`, `M(v') = {{1,2},{3,4}}`.
pub fn demonstrate_impossibility() -> Result<ImpossibilityTrace> {
    let n = 4;
    let c12 = Coalition::from_indices([0, 1]);
    let c34 = Coalition::from_indices([2, 3]);
    let v_causes = vec![c12];
    let w_causes = vec![c34];
    let both_causes = vec![c12, c34];
    let v = make_explicit_cause_game(n, &v_causes)?;
    let w = make_explicit_cause_game(n, &w_causes)?;
    let both = make_explicit_cause_game(n, &both_causes)?;
    for (g, causes) in [(&v, &v_causes), (&w, &w_causes), (&both, &both_causes)] {
        if minimal_causes(g)?.causes() != causes.as_slice() {
            return Err(invariant("enumerated causes differ from the construction"));
        }
    }

    let mut steps = Vec::new();
    let on_v = forced_on_pair("v", &v, &v_causes, (0, 1), &mut steps)?;
    let on_w = forced_on_pair("v''", &w, &w_causes, (2, 3), &mut steps)?;

    let mut on_both = vec![Rational::zero(); n];
    for k in 0..n {
        let (source, label, values) = if k < 2 { (&v_causes, "v", &on_v) } else { (&w_causes, "v''", &on_w) };
        if family_of(&both_causes, k) != family_of(source, k) {
            return Err(invariant("feature families must agree for minimal monotonicity"));
        }
        on_both[k] = values[k].clone();
        steps.push(TraceStep {
            game: "v'".into(),
            feature: k,
            value: values[k].clone(),
            cites: vec!["MM"],
            reason: format!("feature {} has the same minimal causes in v' and {label}", k + 1),
        });
    }
    let forced_total = on_both.iter().fold(Rational::zero(), |a, x| a + x);
    Ok(ImpossibilityTrace {
        n,
        games: vec![("v".into(), v_causes), ("v''".into(), w_causes), ("v'".into(), both_causes)],
        steps,
        forced_total,
        required_total: Rational::one(),
    })
}
