//! Structural causal models over finite domains, interventions, and the
//! value functions they induce over feature coalitions.
//!
//! Features are every variable except the output `y`, in declaration order.
//! Assignments over features are plain `Vec<i64>` in that order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coalition::{Coalition, MAX_FEATURES};
use crate::error::{Error, Result};
use crate::game::{GameKind, GameOracle, SimpleGame};

/// Largest constraint set `all_domain_points` will materialize.
pub const MAX_DOMAIN_POINTS: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Exogenous,
    Endogenous,
}

/// Declarative description of one variable, as read from a model file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSpec {
    pub name: String,
    pub kind: VarKind,
    pub domain: Vec<i64>,
    pub parents: Vec<String>,
    /// Parent-value tuple (in `parents` order) to value. Ignored for exogenous variables.
    pub table: Vec<(Vec<i64>, i64)>,
}

#[derive(Clone, Debug)]
struct Variable {
    name: String,
    kind: VarKind,
    domain: Vec<i64>,
    parents: Vec<usize>,
    table: HashMap<Vec<i64>, i64>,
    /// Set by an intervention: the variable ignores its equation (or context).
    fixed: Option<i64>,
}

/// An acyclic structural causal model `(U, V, R, F)` with a binary sink output.
#[derive(Clone, Debug)]
pub struct CausalModel {
    vars: Vec<Variable>,
    output: usize,
    order: Vec<usize>,
    features: Vec<usize>,
    feature_of_var: Vec<Option<usize>>,
}

/// Targets (feature indices) and the values they are forced to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InterventionSpec {
    pub targets: Vec<(usize, i64)>,
}

impl InterventionSpec {
    pub fn new(targets: Vec<(usize, i64)>) -> Self {
        InterventionSpec { targets }
    }

    /// `S <- x'_S` for a feature coalition and a full feature assignment.
    pub fn from_coalition(s: Coalition, values: &[i64]) -> Self {
        InterventionSpec {
            targets: s.iter().map(|i| (i, values[i])).collect(),
        }
    }
}

impl CausalModel {
    pub fn new(specs: Vec<VariableSpec>, output: &str) -> Result<Self> {
        let index: HashMap<&str, usize> = specs.iter().enumerate().map(|(i, v)| (v.name.as_str(), i)).collect();
        if index.len() != specs.len() {
            return Err(Error::InvalidModel("variable names must be unique".into()));
        }
        let output = *index
            .get(output)
            .ok_or_else(|| Error::InvalidModel(format!("output variable {output:?} is not declared")))?;
        let mut vars = Vec::with_capacity(specs.len());
        for spec in &specs {
            if spec.domain.is_empty() {
                return Err(Error::InvalidModel(format!("variable {} has an empty domain", spec.name)));
            }
            let mut sorted = spec.domain.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != spec.domain.len() {
                return Err(Error::InvalidModel(format!("domain of {} repeats a value", spec.name)));
            }
            let parents = spec
                .parents
                .iter()
                .map(|p| {
                    index
                        .get(p.as_str())
                        .copied()
                        .ok_or_else(|| Error::InvalidModel(format!("{} lists unknown parent {p:?}", spec.name)))
                })
                .collect::<Result<Vec<_>>>()?;
            if spec.kind == VarKind::Exogenous && !parents.is_empty() {
                return Err(Error::InvalidModel(format!("exogenous variable {} cannot have parents", spec.name)));
            }
            let mut table = HashMap::with_capacity(spec.table.len());
            for (key, value) in &spec.table {
                if key.len() != parents.len() {
                    return Err(Error::InvalidModel(format!(
                        "{}: table key {key:?} does not match {} parents",
                        spec.name,
                        parents.len()
                    )));
                }
                if table.insert(key.clone(), *value).is_some() {
                    return Err(Error::InvalidModel(format!("{}: duplicate table key {key:?}", spec.name)));
                }
            }
            vars.push(Variable {
                name: spec.name.clone(),
                kind: spec.kind,
                domain: spec.domain.clone(),
                parents,
                table,
                fixed: None,
            });
        }
        if vars[output].kind != VarKind::Endogenous {
            return Err(Error::InvalidModel("the output variable must be endogenous".into()));
        }
        if !vars[output].domain.iter().all(|v| *v == 0 || *v == 1) {
            return Err(Error::InvalidModel("the output variable must be binary (domain within {0,1})".into()));
        }
        if vars.iter().any(|v| v.parents.contains(&output)) {
            return Err(Error::InvalidModel("the output variable must be a sink".into()));
        }
        let order = topological_order(&vars)?;
        let features: Vec<usize> = (0..vars.len()).filter(|&i| i != output).collect();
        if features.is_empty() || features.len() > MAX_FEATURES {
            return Err(Error::InvalidModel(format!(
                "a model needs between 1 and {MAX_FEATURES} non-output variables"
            )));
        }
        let mut feature_of_var = vec![None; vars.len()];
        for (f, &v) in features.iter().enumerate() {
            feature_of_var[v] = Some(f);
        }
        let model = CausalModel {
            vars,
            output,
            order,
            features,
            feature_of_var,
        };
        model.check_tables()?;
        Ok(model)
    }

    fn check_tables(&self) -> Result<()> {
        for v in self.vars.iter().filter(|v| v.kind == VarKind::Endogenous) {
            let mut total = 0usize;
            for key in self.parent_tuples(v) {
                let value = v.table.get(&key).ok_or_else(|| {
                    Error::ModelIncomplete(format!("{} has no table entry for parents {key:?}", v.name))
                })?;
                if !v.domain.contains(value) {
                    return Err(Error::InvalidModel(format!(
                        "{}: value {value} for parents {key:?} is outside its domain",
                        v.name
                    )));
                }
                total += 1;
            }
            if total != v.table.len() {
                return Err(Error::InvalidModel(format!(
                    "{} has table keys outside its parents' domains",
                    v.name
                )));
            }
        }
        Ok(())
    }

    fn parent_tuples(&self, v: &Variable) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &p in &v.parents {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    self.vars[p].domain.iter().map(move |&d| {
                        let mut k = prefix.clone();
                        k.push(d);
                        k
                    })
                })
                .collect();
        }
        out
    }

    /// Number of features (variables other than the output).
    pub fn n(&self) -> usize {
        self.features.len()
    }

    pub fn feature_names(&self) -> Vec<String> {
        self.features.iter().map(|&v| self.vars[v].name.clone()).collect()
    }

    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|&v| self.vars[v].name == name)
    }

    pub fn feature_domain(&self, f: usize) -> &[i64] {
        &self.vars[self.features[f]].domain
    }

    pub fn feature_kind(&self, f: usize) -> VarKind {
        self.vars[self.features[f]].kind
    }

    pub fn output_name(&self) -> &str {
        &self.vars[self.output].name
    }

    /// Exogenous features in declaration order.
    pub fn exogenous(&self) -> Vec<usize> {
        (0..self.n()).filter(|&f| self.feature_kind(f) == VarKind::Exogenous).collect()
    }

    /// Computes every variable from an exogenous context (one value per
    /// exogenous feature, in [`CausalModel::exogenous`] order). Returns the
    /// feature assignment and the output value.
    pub fn evaluate(&self, context: &[i64]) -> Result<(Vec<i64>, i64)> {
        let exo = self.exogenous();
        if context.len() != exo.len() {
            return Err(Error::InvalidArgument(format!(
                "context has {} values for {} exogenous variables",
                context.len(),
                exo.len()
            )));
        }
        let mut values = vec![0i64; self.vars.len()];
        for (&f, &x) in exo.iter().zip(context) {
            let var = self.features[f];
            self.check_domain(var, x)?;
            values[var] = x;
        }
        self.propagate_in_place(&mut values)?;
        Ok(self.split(values))
    }

    fn split(&self, values: Vec<i64>) -> (Vec<i64>, i64) {
        let y = values[self.output];
        (self.features.iter().map(|&v| values[v]).collect(), y)
    }

    fn check_domain(&self, var: usize, x: i64) -> Result<()> {
        if self.vars[var].domain.contains(&x) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "value {x} is outside the domain of {}",
                self.vars[var].name
            )))
        }
    }

    /// Fills endogenous entries of `values` (exogenous entries preset) in
    /// topological order, honoring intervened constants.
    fn propagate_in_place(&self, values: &mut [i64]) -> Result<()> {
        for &var in &self.order {
            let v = &self.vars[var];
            if let Some(c) = v.fixed {
                values[var] = c;
                continue;
            }
            if v.kind == VarKind::Exogenous {
                continue;
            }
            let key: Vec<i64> = v.parents.iter().map(|&p| values[p]).collect();
            values[var] = *v
                .table
                .get(&key)
                .ok_or_else(|| Error::ModelIncomplete(format!("{} has no entry for parents {key:?}", v.name)))?;
        }
        Ok(())
    }

    /// `M_{X <- x}`: targeted variables become constants.
    pub fn intervene(&self, spec: &InterventionSpec) -> Result<CausalModel> {
        let mut out = self.clone();
        for &(f, x) in &spec.targets {
            let var = *self
                .features
                .get(f)
                .ok_or_else(|| Error::InvalidIntervention(format!("feature {} does not exist", f + 1)))?;
            self.check_domain(var, x)
                .map_err(|e| Error::InvalidIntervention(e.to_string()))?;
            out.vars[var].fixed = Some(x);
        }
        Ok(out)
    }

    /// Rejects interventions on the output variable, addressed by name.
    pub fn intervene_by_name(&self, targets: &[(&str, i64)]) -> Result<CausalModel> {
        let mut spec = InterventionSpec::default();
        for &(name, x) in targets {
            if name == self.output_name() {
                return Err(Error::InvalidIntervention(format!("cannot intervene on the output {name}")));
            }
            let f = self
                .feature_index(name)
                .ok_or_else(|| Error::InvalidIntervention(format!("unknown variable {name:?}")))?;
            spec.targets.push((f, x));
        }
        self.intervene(&spec)
    }

    /// Output of the model for a feature assignment, reading only the
    /// output's parents. Meaningful for assignments consistent with the model.
    pub fn output_of(&self, assignment: &[i64]) -> Result<i64> {
        let y = &self.vars[self.output];
        if let Some(c) = y.fixed {
            return Ok(c);
        }
        let key: Vec<i64> = y
            .parents
            .iter()
            .map(|&p| assignment[self.feature_of_var[p].expect("output parents are features")])
            .collect();
        y.table
            .get(&key)
            .copied()
            .ok_or_else(|| Error::ModelIncomplete(format!("{} has no entry for parents {key:?}", y.name)))
    }

    /// `propagate(x, S, x'_S)`: exogenous features take `x'` inside `S` and
    /// `x` outside; endogenous features in `S` are forced to `x'`; the rest
    /// are recomputed under the intervention.
    pub fn propagate(&self, x: &[i64], s: Coalition, x_new: &[i64]) -> Result<Vec<i64>> {
        self.check_assignment(x)?;
        self.check_assignment(x_new)?;
        Ok(self.propagate_unchecked(x, s, x_new))
    }

    fn propagate_unchecked(&self, x: &[i64], s: Coalition, x_new: &[i64]) -> Vec<i64> {
        let mut values = vec![0i64; self.vars.len()];
        for (f, &var) in self.features.iter().enumerate() {
            let src = if s.contains(f) { x_new } else { x };
            values[var] = src[f];
        }
        for &var in &self.order {
            let v = &self.vars[var];
            let f = self.feature_of_var[var];
            let forced = f.is_some_and(|f| s.contains(f));
            if let Some(c) = v.fixed {
                values[var] = c;
            } else if v.kind == VarKind::Endogenous && !forced {
                let key: Vec<i64> = v.parents.iter().map(|&p| values[p]).collect();
                // Tables are total and validated at construction.
                values[var] = v.table[&key];
            }
        }
        self.features.iter().map(|&v| values[v]).collect()
    }

    /// `Sat`: `x_new` is exactly what intervening `S <- x_new_S` at `x` produces.
    pub fn sat(&self, s: Coalition, x_new: &[i64], x: &[i64]) -> Result<bool> {
        Ok(self.propagate(x, s, x_new)? == x_new)
    }

    pub fn check_assignment(&self, a: &[i64]) -> Result<()> {
        if a.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "assignment has {} values for {} features",
                a.len(),
                self.n()
            )));
        }
        for (f, &x) in a.iter().enumerate() {
            self.check_domain(self.features[f], x)?;
        }
        Ok(())
    }

    /// Validates a point of interest: its endogenous coordinates must agree
    /// with propagating its exogenous ones. The error carries the repaired point.
    pub fn check_point(&self, x: &[i64]) -> Result<()> {
        self.check_assignment(x)?;
        let expected = self.propagate_unchecked(x, Coalition::EMPTY, x);
        if expected != x {
            let names = self.feature_names();
            let fix: Vec<String> = names.iter().zip(&expected).map(|(n, v)| format!("{n}={v}")).collect();
            return Err(Error::InvalidModel(format!(
                "point of interest is inconsistent with the model; propagated values would be {}",
                fix.join(", ")
            )));
        }
        Ok(())
    }

    /// Every domain-valid feature assignment, lexicographic in domain order.
    pub fn all_domain_points(&self) -> Result<ConstraintSet> {
        let mut total: u64 = 1;
        for f in 0..self.n() {
            total = total.saturating_mul(self.feature_domain(f).len() as u64);
            if total > MAX_DOMAIN_POINTS {
                return Err(Error::InvalidArgument(format!(
                    "all_domain_points would list more than {MAX_DOMAIN_POINTS} assignments"
                )));
            }
        }
        let mut points = vec![Vec::new()];
        for f in 0..self.n() {
            points = points
                .into_iter()
                .flat_map(|p| {
                    self.feature_domain(f).iter().map(move |&d| {
                        let mut q = p.clone();
                        q.push(d);
                        q
                    })
                })
                .collect();
        }
        ConstraintSet::new(self, points)
    }
}

fn topological_order(vars: &[Variable]) -> Result<Vec<usize>> {
    let mut indegree: Vec<usize> = vars.iter().map(|v| v.parents.len()).collect();
    let mut children = vec![Vec::new(); vars.len()];
    for (i, v) in vars.iter().enumerate() {
        for &p in &v.parents {
            children[p].push(i);
        }
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..vars.len()).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(vars.len());
    while let Some(i) = ready.pop_first() {
        order.push(i);
        for &c in &children[i] {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                ready.insert(c);
            }
        }
    }
    if order.len() != vars.len() {
        return Err(Error::InvalidModel("the causal network has a cycle".into()));
    }
    Ok(order)
}

/// The feasible alternatives `C_x`: distinct, domain-valid feature assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    candidates: Vec<Vec<i64>>,
}

impl ConstraintSet {
    /// Validates and sorts candidates lexicographically. Duplicates are rejected.
    pub fn new(model: &CausalModel, candidates: Vec<Vec<i64>>) -> Result<Self> {
        for c in &candidates {
            model.check_assignment(c)?;
        }
        Self::from_points(model.n(), candidates)
    }

    /// Constraint set for a black-box function over `n` features.
    pub fn from_points(n: usize, mut candidates: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(c) = candidates.iter().find(|c| c.len() != n) {
            return Err(Error::InvalidArgument(format!("candidate {c:?} does not have {n} values")));
        }
        candidates.sort();
        if let Some(w) = candidates.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("constraint set lists {:?} twice", w[0])));
        }
        Ok(ConstraintSet { candidates })
    }

    pub fn empty() -> Self {
        ConstraintSet { candidates: Vec::new() }
    }

    /// All binary vectors of length `n`.
    pub fn binary_cube(n: usize) -> Result<Self> {
        if n > 20 {
            return Err(Error::InvalidArgument(format!("2^{n} candidates exceed the materialization limit")));
        }
        let points = (0..1u64 << n)
            .map(|m| (0..n).map(|i| ((m >> i) & 1) as i64).collect())
            .collect();
        Self::from_points(n, points)
    }

    pub fn candidates(&self) -> &[Vec<i64>] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Effect {
    /// Interventions propagate downstream (total effect).
    Total,
    /// Only the intervened features change (direct effect).
    Direct,
}

/// Black-box classifier over feature assignments.
pub type Classifier = Arc<dyn Fn(&[i64]) -> i64 + Send + Sync>;

/// `v(S) = max_{x' in C, consistent with S <- x'_S} |F(x') - F(x)|`.
#[derive(Clone)]
pub struct CausalValueGame {
    n: usize,
    effect: Effect,
    model: Option<CausalModel>,
    point: Vec<i64>,
    /// Candidates whose output differs from the point's, in lexicographic order.
    flipping: Vec<Vec<i64>>,
    /// Direct effect only: coordinates where each flipping candidate differs from the point.
    changed: Vec<Coalition>,
}

impl fmt::Debug for CausalValueGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CausalValueGame")
            .field("n", &self.n)
            .field("effect", &self.effect)
            .field("flipping_candidates", &self.flipping.len())
            .finish()
    }
}

impl CausalValueGame {
    /// The lexicographically-first candidate witnessing `v(S) = 1`.
    pub fn witness(&self, s: Coalition) -> Option<&[i64]> {
        match self.effect {
            Effect::Direct => self
                .changed
                .iter()
                .position(|d| d.is_subset_of(s))
                .map(|k| self.flipping[k].as_slice()),
            Effect::Total => {
                let model = self.model.as_ref().expect("total effect games carry a model");
                self.flipping
                    .iter()
                    .find(|c| model.propagate_unchecked(&self.point, s, c) == **c)
                    .map(Vec::as_slice)
            }
        }
    }

    pub fn effect(&self) -> Effect {
        self.effect
    }

    pub fn point(&self) -> &[i64] {
        &self.point
    }
}

impl SimpleGame for CausalValueGame {
    fn n(&self) -> usize {
        self.n
    }

    fn eval(&self, s: Coalition) -> bool {
        self.witness(s).is_some()
    }

    fn kind(&self) -> GameKind {
        GameKind::CausalValue
    }
}

/// Value function of feasible (total-effect) causes for a model, point and constraint set.
pub fn total_effect_game(model: &CausalModel, point: &[i64], constraints: &ConstraintSet) -> Result<GameOracle> {
    Ok(GameOracle::new(total_effect_value(model, point, constraints)?))
}

/// [`total_effect_game`] keeping the concrete type, for witness queries.
pub fn total_effect_value(model: &CausalModel, point: &[i64], constraints: &ConstraintSet) -> Result<CausalValueGame> {
    model.check_point(point)?;
    let y = model.output_of(point)?;
    let mut flipping = Vec::new();
    for c in constraints.candidates() {
        model.check_assignment(c)?;
        if model.output_of(c)? != y {
            flipping.push(c.clone());
        }
    }
    Ok(CausalValueGame {
        n: model.n(),
        effect: Effect::Total,
        model: Some(model.clone()),
        point: point.to_vec(),
        flipping,
        changed: Vec::new(),
    })
}

/// Value function of feasible direct causes: only the features in `S` may
/// differ from the point. `classifier` must return 0 or 1.
pub fn direct_effect_game(
    n: usize,
    classifier: &dyn Fn(&[i64]) -> i64,
    point: &[i64],
    constraints: &ConstraintSet,
) -> Result<GameOracle> {
    Ok(GameOracle::new(direct_effect_value(n, classifier, point, constraints)?))
}

pub fn direct_effect_value(
    n: usize,
    classifier: &dyn Fn(&[i64]) -> i64,
    point: &[i64],
    constraints: &ConstraintSet,
) -> Result<CausalValueGame> {
    if n == 0 || n > MAX_FEATURES {
        return Err(Error::InvalidArgument(format!("feature count {n} out of range")));
    }
    if point.len() != n {
        return Err(Error::InvalidArgument(format!("point has {} values for {n} features", point.len())));
    }
    let binary = |z: &[i64]| -> Result<i64> {
        match classifier(z) {
            b @ (0 | 1) => Ok(b),
            other => Err(Error::InvalidArgument(format!("classifier returned non-binary {other} at {z:?}"))),
        }
    };
    let y = binary(point)?;
    let mut flipping = Vec::new();
    let mut changed = Vec::new();
    for c in constraints.candidates() {
        if c.len() != n {
            return Err(Error::InvalidArgument(format!("candidate {c:?} does not have {n} values")));
        }
        if binary(c)? != y {
            changed.push((0..n).filter(|&i| c[i] != point[i]).collect());
            flipping.push(c.clone());
        }
    }
    Ok(CausalValueGame {
        n,
        effect: Effect::Direct,
        model: None,
        point: point.to_vec(),
        flipping,
        changed,
    })
}

/// Direct-effect game of a model: the classifier is the output's own
/// structural equation applied to the feature assignment.
pub fn model_direct_effect_game(model: &CausalModel, point: &[i64], constraints: &ConstraintSet) -> Result<GameOracle> {
    model.check_assignment(point)?;
    let f = |z: &[i64]| model.output_of(z).unwrap_or(-1);
    direct_effect_game(model.n(), &f, point, constraints)
}

/// Two arsonists: `A_k = U_k`, `B = A_1 or A_2`, all binary. Features are
/// `U1, U2, A1, A2`; the output is `B`.
pub fn arsonist_model() -> CausalModel {
    let exo = |name: &str| VariableSpec {
        name: name.into(),
        kind: VarKind::Exogenous,
        domain: vec![0, 1],
        parents: vec![],
        table: vec![],
    };
    let copy = |name: &str, parent: &str| VariableSpec {
        name: name.into(),
        kind: VarKind::Endogenous,
        domain: vec![0, 1],
        parents: vec![parent.into()],
        table: vec![(vec![0], 0), (vec![1], 1)],
    };
    let mut or_table = BTreeMap::new();
    for a in 0..2 {
        for b in 0..2 {
            or_table.insert(vec![a, b], a | b);
        }
    }
    let specs = vec![
        exo("U1"),
        exo("U2"),
        copy("A1", "U1"),
        copy("A2", "U2"),
        VariableSpec {
            name: "B".into(),
            kind: VarKind::Endogenous,
            domain: vec![0, 1],
            parents: vec!["A1".into(), "A2".into()],
            table: or_table.into_iter().collect(),
        },
    ];
    CausalModel::new(specs, "B").expect("arsonist model is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causes::minimal_causes;
    use crate::coalition::all_coalitions;

    fn names(model: &CausalModel, s: &[&str]) -> Coalition {
        s.iter().map(|n| model.feature_index(n).unwrap()).collect()
    }

    #[test]
    fn arsonist_evaluation() {
        let m = arsonist_model();
        assert_eq!(m.feature_names(), vec!["U1", "U2", "A1", "A2"]);
        assert_eq!(m.evaluate(&[1, 1]).unwrap(), (vec![1, 1, 1, 1], 1));
        assert_eq!(m.evaluate(&[0, 0]).unwrap().1, 0);
        assert_eq!(m.evaluate(&[1, 0]).unwrap().1, 1);
        assert!(m.evaluate(&[2, 0]).is_err());
    }

    #[test]
    fn interventions() {
        let m = arsonist_model();
        let a1_off = m.intervene_by_name(&[("A1", 0)]).unwrap();
        assert_eq!(a1_off.evaluate(&[1, 1]).unwrap(), (vec![1, 1, 0, 1], 1));
        let both = m.intervene_by_name(&[("A1", 0), ("A2", 0)]).unwrap();
        assert_eq!(both.evaluate(&[1, 1]).unwrap().1, 0);
        let none = m.intervene(&InterventionSpec::default()).unwrap();
        for ctx in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            assert_eq!(none.evaluate(&ctx).unwrap(), m.evaluate(&ctx).unwrap());
        }
        // Exogenous targets are allowed.
        let u1 = m.intervene_by_name(&[("U1", 0)]).unwrap();
        assert_eq!(u1.evaluate(&[1, 0]).unwrap().1, 0);
        assert!(matches!(m.intervene_by_name(&[("B", 0)]), Err(Error::InvalidIntervention(_))));
        assert!(m.intervene_by_name(&[("A1", 3)]).is_err());
    }

    #[test]
    fn sat_examples() {
        let m = arsonist_model();
        let x = [1, 1, 1, 1];
        let s = names(&m, &["A1"]);
        assert!(m.sat(s, &[1, 1, 0, 1], &x).unwrap());
        assert!(!m.sat(s, &[1, 1, 0, 0], &x).unwrap());
        let all = Coalition::full(4);
        for c in m.all_domain_points().unwrap().candidates() {
            assert!(m.sat(all, c, &x).unwrap());
        }
    }

    #[test]
    fn propagation_is_a_fixed_point() {
        let m = arsonist_model();
        let x = [1, 1, 1, 1];
        for s in all_coalitions(4) {
            for c in m.all_domain_points().unwrap().candidates() {
                let p = m.propagate(&x, s, c).unwrap();
                assert!(m.sat(s, &p, &x).unwrap(), "S={s} c={c:?}");
            }
        }
    }

    #[test]
    fn arsonist_total_effect_game() {
        let m = arsonist_model();
        let c = m.all_domain_points().unwrap();
        let g = total_effect_value(&m, &[1, 1, 1, 1], &c).unwrap();
        assert!(!g.eval(names(&m, &["A1"])));
        assert!(g.eval(names(&m, &["A1", "A2"])));
        assert!(g.eval(names(&m, &["U1", "U2"])));
        assert_eq!(g.witness(names(&m, &["A1", "A2"])), Some(&[1, 1, 0, 0][..]));
        let oracle = GameOracle::new(g);
        oracle.check_simple().unwrap();
        let mc = minimal_causes(&oracle).unwrap();
        let mut got: Vec<Coalition> = mc.causes().to_vec();
        got.sort();
        let mut want = vec![
            names(&m, &["A1", "A2"]),
            names(&m, &["U1", "A2"]),
            names(&m, &["A1", "U2"]),
            names(&m, &["U1", "U2"]),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn degenerate_constraint_sets() {
        let m = arsonist_model();
        let x = vec![1, 1, 1, 1];
        let empty = total_effect_game(&m, &x, &ConstraintSet::empty()).unwrap();
        assert!(all_coalitions(4).all(|s| !empty.eval(s)));
        let only_x = ConstraintSet::new(&m, vec![x.clone()]).unwrap();
        let g = total_effect_game(&m, &x, &only_x).unwrap();
        assert!(all_coalitions(4).all(|s| !g.eval(s)));
    }

    #[test]
    fn inconsistent_point_rejected_with_repair() {
        let m = arsonist_model();
        let err = total_effect_game(&m, &[1, 1, 0, 1], &ConstraintSet::empty()).unwrap_err();
        assert!(err.to_string().contains("A1=1"), "{err}");
    }

    #[test]
    fn duplicate_candidates_rejected() {
        let m = arsonist_model();
        assert!(ConstraintSet::new(&m, vec![vec![1, 1, 1, 1], vec![1, 1, 1, 1]]).is_err());
        assert!(ConstraintSet::new(&m, vec![vec![1, 1, 1]]).is_err());
    }

    #[test]
    fn direct_effect_flip_on_first_feature() {
        let f = |z: &[i64]| z[0];
        let c = ConstraintSet::binary_cube(2).unwrap();
        let g = direct_effect_game(2, &f, &[0, 0], &c).unwrap();
        assert!(g.eval(Coalition::from_indices([0])));
        assert!(!g.eval(Coalition::from_indices([1])));
        let only = ConstraintSet::from_points(2, vec![vec![0, 0]]).unwrap();
        let g = direct_effect_game(2, &f, &[0, 0], &only).unwrap();
        assert!(all_coalitions(2).all(|s| !g.eval(s)));
    }

    #[test]
    fn non_binary_classifier_rejected() {
        let f = |z: &[i64]| z[0] * 2;
        let c = ConstraintSet::binary_cube(1).unwrap();
        assert!(direct_effect_game(1, &f, &[0], &c).is_err());
    }

    #[test]
    fn model_validation() {
        let mut specs = vec![VariableSpec {
            name: "X".into(),
            kind: VarKind::Endogenous,
            domain: vec![0, 1],
            parents: vec!["Y".into()],
            table: vec![(vec![0], 0), (vec![1], 1)],
        }];
        specs.push(VariableSpec {
            name: "Y".into(),
            kind: VarKind::Endogenous,
            domain: vec![0, 1],
            parents: vec!["X".into()],
            table: vec![(vec![0], 0), (vec![1], 1)],
        });
        assert!(CausalModel::new(specs.clone(), "Y").is_err());
        // Missing table entry.
        specs[0].parents.clear();
        specs[0].table.clear();
        specs[0].kind = VarKind::Exogenous;
        specs[1].table.pop();
        assert!(matches!(CausalModel::new(specs.clone(), "Y"), Err(Error::ModelIncomplete(_))));
        specs[1].table.push((vec![1], 2));
        assert!(CausalModel::new(specs.clone(), "Y").is_err());
    }

    #[test]
    fn total_and_direct_coincide_without_mediators() {
        // y = majority of three exogenous bits: no endogenous feature besides y.
        let exo = |n: &str| VariableSpec {
            name: n.into(),
            kind: VarKind::Exogenous,
            domain: vec![0, 1],
            parents: vec![],
            table: vec![],
        };
        let mut table = Vec::new();
        for m in 0..8i64 {
            let bits = vec![m & 1, (m >> 1) & 1, (m >> 2) & 1];
            let maj = i64::from(bits.iter().sum::<i64>() >= 2);
            table.push((bits, maj));
        }
        let y = VariableSpec {
            name: "y".into(),
            kind: VarKind::Endogenous,
            domain: vec![0, 1],
            parents: vec!["a".into(), "b".into(), "c".into()],
            table,
        };
        let m = CausalModel::new(vec![exo("a"), exo("b"), exo("c"), y], "y").unwrap();
        let c = m.all_domain_points().unwrap();
        for x in c.candidates() {
            let t = total_effect_game(&m, x, &c).unwrap();
            let d = model_direct_effect_game(&m, x, &c).unwrap();
            assert!(all_coalitions(3).all(|s| t.eval(s) == d.eval(s)));
        }
    }
}
