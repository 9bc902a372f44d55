//! Executable axioms for the power indices.
//!
//! Every axiom is tested over a seeded budget of randomized instances. An
//! instance is a concrete object (games given by their minimal causes,
//! synthetic quasi-minimal families, a feature, a permutation, a contracted
//! set, a sampling configuration) and is evaluated against the axiom's
//! defining clause with exact rational arithmetic. A failure keeps the
//! first violating instance in trial order as a re-checkable witness.

mod check;
mod contraction;
mod generate;
mod impossibility;
mod instances;
mod partition;
mod quasi;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::indices::IndexKind;
use crate::rational::{self, Rational};

pub use contraction::{check_contraction_formula, ContractionCheck};
pub use generate::{
    random_antichain, random_monotone_game, random_permutation, random_subset, trial_rng, SWEEP_LIMIT,
};
pub use impossibility::{demonstrate_impossibility, ImpossibilityTrace, TraceStep};
pub use partition::{partition_game, partition_vectors, subset_sum_count, PartitionVector};
pub use quasi::{alternate_johnston, SyntheticQuasiFamily};

/// Axiom identifiers, named by their usual abbreviations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Minimum size monotonicity.
    Msm,
    /// Unit efficiency.
    Ue,
    /// Symmetry.
    S,
    /// Null feature.
    Nf,
    /// Contraction.
    C,
    /// Minimal monotonicity.
    Mm,
    /// Total minimal cause efficiency.
    Tmce,
    /// Count monotonicity.
    Cm,
    /// Minimal cause efficiency.
    Mce,
    /// Individual set monotonicity.
    Ism,
    /// Efficiency (only used by the impossibility demonstration).
    E,
    /// Quasi-minimal monotonicity.
    Qmm,
    /// Alternate quasi-minimal monotonicity.
    Aqm,
    /// Alternate quasi-minimal cause efficiency.
    Aqce,
    /// Alternate symmetry.
    As,
    /// Alternate null feature.
    Anf,
    /// General efficiency.
    Ge,
    /// Total power.
    Tp,
    /// Relative quasi-minimal monotonicity.
    Rqm,
    /// Relative minimal monotonicity.
    Rmm,
    /// Relative symmetry.
    Rs,
}

impl Axiom {
    pub const ALL: [Axiom; 21] = [
        Axiom::Msm,
        Axiom::Ue,
        Axiom::S,
        Axiom::Nf,
        Axiom::C,
        Axiom::Mm,
        Axiom::Tmce,
        Axiom::Cm,
        Axiom::Mce,
        Axiom::Ism,
        Axiom::E,
        Axiom::Qmm,
        Axiom::Aqm,
        Axiom::Aqce,
        Axiom::As,
        Axiom::Anf,
        Axiom::Ge,
        Axiom::Tp,
        Axiom::Rqm,
        Axiom::Rmm,
        Axiom::Rs,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Axiom::Msm => "MSM",
            Axiom::Ue => "UE",
            Axiom::S => "S",
            Axiom::Nf => "NF",
            Axiom::C => "C",
            Axiom::Mm => "MM",
            Axiom::Tmce => "TMCE",
            Axiom::Cm => "CM",
            Axiom::Mce => "MCE",
            Axiom::Ism => "ISM",
            Axiom::E => "E",
            Axiom::Qmm => "QMM",
            Axiom::Aqm => "AQM",
            Axiom::Aqce => "AQCE",
            Axiom::As => "AS",
            Axiom::Anf => "ANF",
            Axiom::Ge => "GE",
            Axiom::Tp => "TP",
            Axiom::Rqm => "RQM",
            Axiom::Rmm => "RMM",
            Axiom::Rs => "RS",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        Axiom::ALL
            .into_iter()
            .find(|a| a.code() == upper)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown axiom {s:?}")))
    }
}

/// What an axiom is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexProcedure {
    /// An exact index on the raw scale.
    Exact(IndexKind),
    /// The alternate Johnston index over synthetic quasi-minimal families.
    AlternateJohnston,
    /// A sampling estimator (Johnston, Deegan-Packel, Holler-Packel or responsibility).
    Estimator(IndexKind),
}

impl IndexProcedure {
    pub fn name(self) -> String {
        match self {
            IndexProcedure::Exact(k) => k.name().to_string(),
            IndexProcedure::AlternateJohnston => "alternate-johnston".into(),
            IndexProcedure::Estimator(k) => format!("sampled-{}", k.name()),
        }
    }

    /// The axiom set that characterizes the procedure.
    pub fn characterizing_axioms(self) -> Vec<Axiom> {
        use Axiom::*;
        match self {
            IndexProcedure::Exact(IndexKind::Responsibility) => vec![Msm, Ue, S, Nf, C],
            IndexProcedure::Exact(IndexKind::HollerPackel) => vec![Mm, Tmce, S, Nf, Cm],
            IndexProcedure::Exact(IndexKind::DeeganPackel) => vec![Mm, Mce, S, Nf, Ism],
            IndexProcedure::Exact(IndexKind::Johnston) => vec![S, Nf],
            IndexProcedure::Exact(IndexKind::Shapley) => vec![S, Nf, Ge],
            IndexProcedure::Exact(IndexKind::Banzhaf) => vec![S, Nf, Tp],
            IndexProcedure::AlternateJohnston => vec![Aqm, Aqce, As, Anf],
            IndexProcedure::Estimator(IndexKind::Johnston) => vec![Rqm, Rs, Nf],
            IndexProcedure::Estimator(_) => vec![Rmm, Rs, Nf],
        }
    }

    /// Whether the axiom is stated over the procedure's kind of input.
    pub fn accepts(self, axiom: Axiom) -> bool {
        use Axiom::*;
        match self {
            IndexProcedure::Exact(_) => matches!(axiom, Msm | Ue | S | Nf | C | Mm | Tmce | Cm | Mce | Ism | Qmm | Ge | Tp),
            IndexProcedure::AlternateJohnston => matches!(axiom, Aqm | Aqce | As | Anf),
            IndexProcedure::Estimator(k) => match axiom {
                Rs | Nf => true,
                Rqm => k == IndexKind::Johnston,
                Rmm => k != IndexKind::Johnston,
                _ => false,
            },
        }
    }
}

impl fmt::Display for IndexProcedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for IndexProcedure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "alternate-johnston" {
            return Ok(IndexProcedure::AlternateJohnston);
        }
        if let Some(rest) = s.strip_prefix("sampled-") {
            let k: IndexKind = rest.parse()?;
            if matches!(k, IndexKind::Shapley | IndexKind::Banzhaf) {
                return Err(Error::InvalidArgument(format!("no sampling estimator for {k}")));
            }
            return Ok(IndexProcedure::Estimator(k));
        }
        Ok(IndexProcedure::Exact(s.parse()?))
    }
}

/// A concrete input to an axiom's defining clause.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    pub n: usize,
    /// Games given by their minimal causes.
    pub games: Vec<Vec<Coalition>>,
    /// Synthetic quasi-minimal families.
    pub families: Vec<SyntheticQuasiFamily>,
    pub feature: Option<usize>,
    /// `perm[i] = pi(i)`.
    pub permutation: Option<Vec<usize>>,
    /// Contracted set.
    pub set: Option<Coalition>,
    /// Sample count and seed for estimator procedures.
    pub sampling: Option<(u64, u64)>,
}

fn one_based(family: &[Coalition]) -> Value {
    Value::Array(family.iter().map(|s| json!(s.to_one_based())).collect())
}

impl Instance {
    /// JSON rendering with 1-based features.
    pub fn to_json(&self) -> Value {
        let mut out = serde_json::Map::new();
        out.insert("n".into(), json!(self.n));
        if !self.games.is_empty() {
            out.insert(
                "games".into(),
                Value::Array(self.games.iter().map(|g| json!({ "minimal_causes": one_based(g) })).collect()),
            );
        }
        if !self.families.is_empty() {
            let fams = self
                .families
                .iter()
                .map(|f| {
                    Value::Array(
                        f.iter()
                            .map(|(s, x)| json!({ "set": s.to_one_based(), "critical": x.to_one_based() }))
                            .collect(),
                    )
                })
                .collect();
            out.insert("families".into(), Value::Array(fams));
        }
        if let Some(i) = self.feature {
            out.insert("feature".into(), json!(i + 1));
        }
        if let Some(p) = &self.permutation {
            out.insert("permutation".into(), json!(p.iter().map(|x| x + 1).collect::<Vec<_>>()));
        }
        if let Some(t) = self.set {
            out.insert("set".into(), json!(t.to_one_based()));
        }
        if let Some((m, seed)) = self.sampling {
            out.insert("samples".into(), json!(m));
            out.insert("seed".into(), json!(seed));
        }
        Value::Object(out)
    }
}

/// A violating instance with the values that break the axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub instance: Instance,
    pub detail: String,
    pub values: Vec<Rational>,
}

impl Witness {
    /// Re-evaluates the instance; `true` if it still violates the axiom.
    pub fn recheck(&self, procedure: IndexProcedure, axiom: Axiom) -> Result<bool> {
        Ok(matches!(check::evaluate(procedure, axiom, &self.instance)?, Outcome::Violated { .. }))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "instance": self.instance.to_json(),
            "detail": self.detail,
            "values": self.values.iter().map(rational::to_string).collect::<Vec<_>>(),
        })
    }
}

/// Result of evaluating one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The instance does not meet the axiom's premise.
    Skipped,
    /// The clause holds; `equality` marks instances in the equality branch.
    Holds { equality: bool },
    Violated { detail: String, values: Vec<Rational> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// Verdict of one axiom over a trial budget. A pass means no counterexample
/// was found among the `checked` instances, not a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub procedure: IndexProcedure,
    pub budget: u32,
    pub seed: u64,
    /// Instances that met the premise and were evaluated.
    pub checked: u32,
    /// Evaluated instances in the equality branch.
    pub equality_cases: u32,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "axiom": self.axiom.code(),
            "index": self.procedure.name(),
            "trials": self.budget,
            "seed": self.seed,
            "checked": self.checked,
            "equality_cases": self.equality_cases,
            "verdict": self.verdict.name(),
            "witness": self.witness.as_ref().map(Witness::to_json),
        })
    }
}

/// Evaluates one instance against an axiom.
pub fn evaluate_instance(procedure: IndexProcedure, axiom: Axiom, instance: &Instance) -> Result<Outcome> {
    ensure_applicable(procedure, axiom)?;
    check::evaluate(procedure, axiom, instance)
}

fn ensure_applicable(procedure: IndexProcedure, axiom: Axiom) -> Result<()> {
    if axiom == Axiom::E {
        return Err(Error::InvalidArgument(
            "E is only used inside the impossibility demonstration; no index is checked against it".into(),
        ));
    }
    if !procedure.accepts(axiom) {
        return Err(Error::InvalidArgument(format!("axiom {axiom} does not apply to {procedure}")));
    }
    Ok(())
}

/// Checks an axiom over `budget` seeded trials. Trial `t` draws its instance
/// from [`trial_rng`]`(seed, t)`; the first violation in trial order is kept.
pub fn check_axiom(procedure: IndexProcedure, axiom: Axiom, budget: u32, seed: u64) -> Result<AxiomCheck> {
    ensure_applicable(procedure, axiom)?;
    let run = |t: u32| -> Result<(Instance, Outcome)> {
        let mut rng = trial_rng(seed, u64::from(t));
        let instance = instances::generate(procedure, axiom, &mut rng);
        if instance.games.is_empty() && instance.families.is_empty() {
            // The recipe ran out of attempts to meet the premise.
            return Ok((instance, Outcome::Skipped));
        }
        let outcome = check::evaluate(procedure, axiom, &instance)?;
        Ok((instance, outcome))
    };
    #[cfg(feature = "parallel")]
    let results: Vec<Result<(Instance, Outcome)>> = {
        use rayon::prelude::*;
        (0..budget).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<(Instance, Outcome)>> = (0..budget).map(run).collect();

    let mut report = AxiomCheck {
        axiom,
        procedure,
        budget,
        seed,
        checked: 0,
        equality_cases: 0,
        verdict: Verdict::Pass,
        witness: None,
    };
    for result in results {
        let (instance, outcome) = result?;
        match outcome {
            Outcome::Skipped => {}
            Outcome::Holds { equality } => {
                report.checked += 1;
                report.equality_cases += u32::from(equality);
            }
            Outcome::Violated { detail, values } => {
                report.checked += 1;
                if report.witness.is_none() {
                    report.verdict = Verdict::Fail;
                    report.witness = Some(Witness {
                        instance,
                        detail,
                        values,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Checks every characterizing axiom of a procedure.
pub fn check_characterization(procedure: IndexProcedure, budget: u32, seed: u64) -> Result<Vec<AxiomCheck>> {
    procedure
        .characterizing_axioms()
        .into_iter()
        .map(|a| check_axiom(procedure, a, budget, seed))
        .collect()
}
