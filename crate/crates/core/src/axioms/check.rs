//! Defining clauses of the axioms, evaluated on concrete instances.

use num_traits::{One, Zero};

use crate::causes::{cause_families, quasi_minimal_causes};
use crate::coalition::{all_coalitions, Coalition};
use crate::error::{Error, Result};
use crate::game::{contract, make_explicit_cause_game, permute, validate_antichain, GameOracle};
use crate::indices::{compute_index, Scale};
use crate::rational::{from_u64, inv_pow2, Rational};
use crate::sampling::{estimate_index, SamplingConfig};

use super::generate::{containing, min_size_containing};
use super::quasi::alternate_johnston;
use super::{Axiom, IndexProcedure, Instance, Outcome};

fn missing(what: &str) -> Error {
    Error::InvalidArgument(format!("instance is missing its {what}"))
}

fn game_at(inst: &Instance, k: usize) -> Result<GameOracle> {
    let causes = inst.games.get(k).ok_or_else(|| missing("games"))?;
    make_explicit_cause_game(inst.n, causes)
}

fn feature(inst: &Instance) -> Result<usize> {
    inst.feature.filter(|&i| i < inst.n).ok_or_else(|| missing("feature"))
}

/// Index values of a game under the procedure (raw scale).
fn values(procedure: IndexProcedure, game: &GameOracle, inst: &Instance) -> Result<Vec<Rational>> {
    match procedure {
        IndexProcedure::Exact(kind) => Ok(compute_index(game, kind, Scale::Raw)?.values),
        IndexProcedure::Estimator(kind) => {
            let (m, seed) = inst.sampling.ok_or_else(|| missing("sampling configuration"))?;
            let config = SamplingConfig::with_samples(m, seed)?;
            Ok(estimate_index(game, kind, &config)?.estimates.values)
        }
        IndexProcedure::AlternateJohnston => Err(Error::InvalidArgument(
            "the alternate Johnston index takes synthetic families, not games".into(),
        )),
    }
}

fn holds(equality: bool) -> Outcome {
    Outcome::Holds { equality }
}

fn violated(detail: String, values: Vec<Rational>) -> Outcome {
    Outcome::Violated { detail, values }
}

fn sum(values: &[Rational]) -> Rational {
    values.iter().fold(Rational::zero(), |a, v| a + v)
}

/// `a <= b` with equality required when `equal`; describes the failure.
fn monotone_clause(a: &Rational, b: &Rational, equal: bool, label: &str) -> Outcome {
    if equal && a != b {
        violated(format!("{label}: equality premise holds but values differ"), vec![a.clone(), b.clone()])
    } else if a > b {
        violated(format!("{label}: first value exceeds second"), vec![a.clone(), b.clone()])
    } else {
        holds(equal)
    }
}

/// Is there a bijection `S_k -> T_k` with `S_k` a subset of its image?
fn subset_matching(small: &[Coalition], big: &[Coalition]) -> bool {
    fn go(k: usize, small: &[Coalition], big: &[Coalition], used: &mut [bool]) -> bool {
        if k == small.len() {
            return true;
        }
        for j in 0..big.len() {
            if !used[j] && small[k].is_subset_of(big[j]) {
                used[j] = true;
                if go(k + 1, small, big, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    small.len() == big.len() && go(0, small, big, &mut vec![false; big.len()])
}

pub(super) fn ism_premise(shrunk: &[Coalition], original: &[Coalition], i: usize) -> bool {
    subset_matching(&containing(shrunk, i), &containing(original, i))
}

pub(super) fn evaluate(procedure: IndexProcedure, axiom: Axiom, inst: &Instance) -> Result<Outcome> {
    let mut normalized = inst.clone();
    for g in &mut normalized.games {
        *g = validate_antichain(inst.n, g)?;
    }
    let inst = &normalized;
    if inst.games.is_empty() && !matches!(axiom, Axiom::Aqm | Axiom::Aqce | Axiom::As | Axiom::Anf) {
        return Err(missing("games"));
    }
    match axiom {
        Axiom::S => symmetry(procedure, inst),
        Axiom::Nf => null_feature(procedure, inst),
        Axiom::Msm => min_size_monotonicity(procedure, inst),
        Axiom::Ue => unit_efficiency(procedure, inst),
        Axiom::C => contraction(procedure, inst),
        Axiom::Mm => minimal_monotonicity(procedure, inst),
        Axiom::Cm => count_monotonicity(procedure, inst),
        Axiom::Ism => individual_set_monotonicity(procedure, inst),
        Axiom::Qmm => quasi_minimal_monotonicity(procedure, inst),
        Axiom::Tmce | Axiom::Mce | Axiom::Ge | Axiom::Tp => efficiency(procedure, axiom, inst),
        Axiom::Aqm => alternate_monotonicity(inst),
        Axiom::Aqce => alternate_efficiency(inst),
        Axiom::As => alternate_symmetry(inst),
        Axiom::Anf => alternate_null_feature(inst),
        Axiom::Rqm | Axiom::Rmm | Axiom::Rs => relative(procedure, axiom, inst),
        Axiom::E => Err(Error::InvalidArgument("E is not checked on instances".into())),
    }
}

/// `gamma_j(pi v) = gamma_{pi(j)}(v)` for `(pi v)(S) = v(pi(S))`.
fn symmetry(procedure: IndexProcedure, inst: &Instance) -> Result<Outcome> {
    let v = game_at(inst, 0)?;
    let perm = inst.permutation.as_ref().ok_or_else(|| missing("permutation"))?;
    let pv = permute(&v, perm)?;
    let a = values(procedure, &v, inst)?;
    let b = values(procedure, &pv, inst)?;
    for j in 0..inst.n {
        if b[j] != a[perm[j]] {
            return Ok(violated(
                format!("feature {} of the permuted game differs from feature {} of the original", j + 1, perm[j] + 1),
                vec![b[j].clone(), a[perm[j]].clone()],
            ));
        }
    }
    Ok(holds(true))
}

/// Features in no minimal cause get zero.
fn null_feature(procedure: IndexProcedure, inst: &Instance) -> Result<Outcome> {
    let v = game_at(inst, 0)?;
    let causes = &inst.games[0];
    let gamma = values(procedure, &v, inst)?;
    let mut any = false;
    for (i, g) in gamma.iter().enumerate().take(inst.n) {
        if containing(causes, i).is_empty() {
            any = true;
            if !g.is_zero() {
                return Ok(violated(format!("null feature {} has non-zero value", i + 1), vec![g.clone()]));
            }
        }
    }
    Ok(if any { holds(true) } else { Outcome::Skipped })
}

/// Smaller smallest cause means at least as much value; equal sizes, equal value.
fn min_size_monotonicity(procedure: IndexProcedure, inst: &Instance) -> Result<Outcome> {
    let i = feature(inst)?;
    let (a, b) = match (
        min_size_containing(&inst.games[0], i),
        min_size_containing(inst.games.get(1).ok_or_else(|| missing("second game"))?, i),
    ) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(Outcome::Skipped),
    };
    let g0 = values(procedure, &game_at(inst, 0)?, inst)?[i].clone();
    let g1 = values(procedure, &game_at(inst, 1)?, inst)?[i].clone();
    // With a <= b the value in the first game must dominate.
    let (hi, lo) = if a <= b { (g0, g1) } else { (g1, g0) };
    Ok(monotone_clause(&lo, &hi, a == b, "smaller minimum cause size"))
}

/// `{i}` is a minimal cause implies value 1.
fn unit_efficiency(procedure: IndexProcedure, inst: &Instance) -> Result<Outcome> {
    let i = feature(inst)?;
    if !inst.games[0].contains(&Coalition::singleton(i)) {
        return Ok(Outcome::Skipped);
    }
    let g = values(procedure, &game_at(inst, 0)?, inst)?[i].clone();
    Ok(if g.is_one() {
        holds(true)
    } else {
        violated(format!("feature {} is a minimal cause on its own but scores", i + 1), vec![g])
    })
}

/// `gamma_[T](v_[T]) <= sum_{i in T} gamma_i(v)`, with equality when `T` is
/// a smallest minimal cause of each of its members.
fn contraction(procedure: IndexProcedure, inst: &Instance) -> Result<Outcome> {
    let t = inst.set.ok_or_else(|| missing("contracted set"))?;
    let causes = &inst.games[0];
    if t.len() < 2 || t.iter().any(|i| containing(causes, i).is_empty()) {
        return Ok(Outcome::Skipped);
    }
    let v = game_at(inst, 0)?;
    let (vt, map) = contract(&v, t)?;
    let merged = values(procedure, &vt, inst)?[map.merged].clone();
    let gamma = values(procedure, &v, inst)?;
    let total = t.iter().fold(Rational::zero(), |a, i| a + &gamma[i]);
    let equality_branch = causes.contains(&t) && t.iter().all(|i| min_size_containing(causes, i) == Some(t.len()));
    if merged > total {
        return Ok(violated("merged feature exceeds the sum of its members".into(), vec![merged, total]));
    }
    if equality_branch && merged != total {
        return Ok(violated(
            "contracted set is a smallest minimal cause of all its members but the values differ".into(),
            vec![merged, total],
        ));
    }
    Ok(holds(equality_branch))
}

/// `M_i(v) subset of M_i(v')` implies `gamma_i(v) <= gamma_i(v')`.
fn minimal_monotonicity(procedure: IndexProcedure, inst: &Instance) -> Result<Outcome> {
    let i = feature(inst)?;
    let a = containing(&inst.games[0], i);
    let b = containing(inst.games.get(1).ok_or_else(|| missing("second game"))?, i);
    if !a.iter().all(|s| b.contains(s)) {
        return Ok(Outcome::Skipped);
    }
    let g0 = values(procedure, &game_at(inst, 0)?, inst)?[i].clone();
    let g1 = values(procedure, &game_at(inst, 1)?, inst)?[i].clone();
    Ok(monotone_clause(&g0, &g1, a == b, "nested minimal causes"))
}

/// `|M_i(v)| <= |M_i(v')|` implies `gamma_i(v) <= gamma_i(v')`.
fn count_monotonicity(procedure: IndexProcedure, inst: &Instance) -> Result<Outcome> {
    let i = feature(inst)?;
    let a = containing(&inst.games[0], i).len();
    let b = containing(inst.games.get(1).ok_or_else(|| missing("second game"))?, i).len();
    let g0 = values(procedure, &game_at(inst, 0)?, inst)?[i].clone();
    let g1 = values(procedure, &game_at(inst, 1)?, inst)?[i].clone();
    let (lo, hi) = if a <= b { (g0, g1) } else { (g1, g0) };
    Ok(monotone_clause(&lo, &hi, a == b, "minimal cause counts"))
}

/// Element-wise smaller causes give at least as much value, with equality
/// exactly when the causes coincide. Game 0 has the smaller causes.
fn individual_set_monotonicity(procedure: IndexProcedure, inst: &Instance) -> Result<Outcome> {
    let i = feature(inst)?;
    let shrunk = &inst.games[0];
    let original = inst.games.get(1).ok_or_else(|| missing("second game"))?;
    if !ism_premise(shrunk, original, i) {
        return Ok(Outcome::Skipped);
    }
    let same = containing(shrunk, i) == containing(original, i);
    let g_small = values(procedure, &game_at(inst, 0)?, inst)?[i].clone();
    let g_big = values(procedure, &game_at(inst, 1)?, inst)?[i].clone();
    if g_small < g_big {
        return Ok(violated("smaller causes score lower".into(), vec![g_small, g_big]));
    }
    if same && g_small != g_big {
        return Ok(violated("identical causes score differently".into(), vec![g_small, g_big]));
    }
    if !same && g_small == g_big {
        return Ok(violated(
            "strictly smaller causes score the same, but equality requires identical causes".into(),
            vec![g_small, g_big],
        ));
    }
    Ok(holds(same))
}

/// `G_i(v) subset of G_i(v')` implies `gamma_i(v) <= gamma_i(v')`; equality
/// when the quasi-minimal families of `i` coincide.
fn quasi_minimal_monotonicity(procedure: IndexProcedure, inst: &Instance) -> Result<Outcome> {
    let i = feature(inst)?;
    let v0 = game_at(inst, 0)?;
    let v1 = game_at(inst, 1)?;
    let a: Vec<Coalition> = quasi_minimal_causes(&v0)?.for_feature(i).collect();
    let b: Vec<Coalition> = quasi_minimal_causes(&v1)?.for_feature(i).collect();
    if !a.iter().all(|s| b.binary_search(s).is_ok()) {
        return Ok(Outcome::Skipped);
    }
    let g0 = values(procedure, &v0, inst)?[i].clone();
    let g1 = values(procedure, &v1, inst)?[i].clone();
    Ok(monotone_clause(&g0, &g1, a == b, "nested quasi-minimal causes"))
}

/// Efficiency-style totals.
fn efficiency(procedure: IndexProcedure, axiom: Axiom, inst: &Instance) -> Result<Outcome> {
    let v = game_at(inst, 0)?;
    let gamma = values(procedure, &v, inst)?;
    let total = sum(&gamma);
    let n = inst.n;
    let causes = &inst.games[0];
    let expected = match axiom {
        Axiom::Tmce => from_u64(causes.iter().map(|s| s.len() as u64).sum()) * inv_pow2(n - 1),
        Axiom::Mce => from_u64(causes.len() as u64) * inv_pow2(n - 1),
        Axiom::Ge => from_u64(u64::from(v.eval(Coalition::full(n)))),
        Axiom::Tp => {
            let swings: u64 = (0..n)
                .map(|i| {
                    all_coalitions(n)
                        .filter(|s| !s.contains(i) && v.eval(s.with(i)) && !v.eval(*s))
                        .count() as u64
                })
                .sum();
            from_u64(swings) * inv_pow2(n - 1)
        }
        _ => unreachable!("efficiency axioms only"),
    };
    Ok(if total == expected {
        holds(true)
    } else {
        violated(format!("{axiom}: total differs from the required value"), vec![total, expected])
    })
}

fn family_at(inst: &Instance, k: usize) -> Result<&super::SyntheticQuasiFamily> {
    inst.families.get(k).ok_or_else(|| missing("synthetic families"))
}

/// `G_i subset of H_i` under a shared mapping implies `omega_i(G) <= omega_i(H)`.
fn alternate_monotonicity(inst: &Instance) -> Result<Outcome> {
    let i = feature(inst)?;
    let g = family_at(inst, 0)?;
    let h = family_at(inst, 1)?;
    // The axiom quantifies over one mapping shared by both families.
    if g.iter().any(|(s, x)| h.chi(s).is_some_and(|y| y != x)) {
        return Ok(Outcome::Skipped);
    }
    let gi = g.for_feature(i);
    let hi = h.for_feature(i);
    if !gi.iter().all(|s| hi.contains(s)) {
        return Ok(Outcome::Skipped);
    }
    let a = alternate_johnston(g).values[i].clone();
    let b = alternate_johnston(h).values[i].clone();
    Ok(monotone_clause(&a, &b, gi == hi, "nested critical families"))
}

/// `sum_i omega_i = |G|`.
fn alternate_efficiency(inst: &Instance) -> Result<Outcome> {
    let g = family_at(inst, 0)?;
    let total = alternate_johnston(g).total();
    let expected = from_u64(g.len() as u64);
    Ok(if total == expected {
        holds(true)
    } else {
        violated("total differs from the family size".into(), vec![total, expected])
    })
}

/// `omega_{pi i}(pi G, pi chi) = omega_i(G, chi)`.
fn alternate_symmetry(inst: &Instance) -> Result<Outcome> {
    let g = family_at(inst, 0)?;
    let perm = inst.permutation.as_ref().ok_or_else(|| missing("permutation"))?;
    let a = alternate_johnston(g).values;
    let b = alternate_johnston(&g.permute(perm)).values;
    for i in 0..inst.n {
        if b[perm[i]] != a[i] {
            return Ok(violated(
                format!("feature {} moved to {} changed value", i + 1, perm[i] + 1),
                vec![a[i].clone(), b[perm[i]].clone()],
            ));
        }
    }
    Ok(holds(true))
}

/// Features critical in no member get zero.
fn alternate_null_feature(inst: &Instance) -> Result<Outcome> {
    let g = family_at(inst, 0)?;
    let w = alternate_johnston(g).values;
    let mut any = false;
    for (i, wi) in w.iter().enumerate() {
        if g.for_feature(i).is_empty() {
            any = true;
            if !wi.is_zero() {
                return Ok(violated(format!("feature {} is never critical but scores", i + 1), vec![wi.clone()]));
            }
        }
    }
    Ok(if any { holds(true) } else { Outcome::Skipped })
}

/// Relative properties of the estimators, over every ordered feature pair.
fn relative(procedure: IndexProcedure, axiom: Axiom, inst: &Instance) -> Result<Outcome> {
    let v = game_at(inst, 0)?;
    let est = values(procedure, &v, inst)?;
    let (minimal, quasi) = cause_families(&v)?;
    let fam: Vec<Vec<Coalition>> = (0..inst.n)
        .map(|i| match axiom {
            Axiom::Rqm => quasi.for_feature(i).collect(),
            _ => minimal.for_feature(i).collect(),
        })
        .collect();
    let mut any = false;
    let mut equality = false;
    for i in 0..inst.n {
        for j in 0..inst.n {
            if i == j {
                continue;
            }
            let nested = fam[i].iter().all(|s| fam[j].binary_search(s).is_ok());
            let same = fam[i] == fam[j];
            let outcome = match axiom {
                Axiom::Rs if same => monotone_clause(&est[i], &est[j], true, "equal minimal causes"),
                Axiom::Rqm | Axiom::Rmm if nested => monotone_clause(&est[i], &est[j], false, "nested causes"),
                _ => continue,
            };
            any = true;
            equality |= same;
            if let Outcome::Violated { detail, values } = outcome {
                return Ok(violated(format!("features {} and {}: {detail}", i + 1, j + 1), values));
            }
        }
    }
    Ok(if any { holds(equality) } else { Outcome::Skipped })
}
