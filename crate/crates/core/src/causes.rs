//! Exhaustive enumeration of minimal causes `M(v)`, quasi-minimal causes
//! `G(v)` and critical sets `chi(S)`.
//!
//! Enumeration materializes the game's truth table, then classifies every
//! coalition locally: for a monotone game a winning `S` is minimal iff every
//! member is critical, and quasi-minimal iff at least one member is.
//! Families are kept in ascending mask order.

use serde::{Deserialize, Serialize};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{GameOracle, SimpleGame, TruthTable};

/// Largest feature count accepted by exhaustive enumeration.
pub const ENUMERATION_LIMIT: usize = crate::game::TABLE_LIMIT;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Minimal,
    QuasiMinimal,
}

/// An enumerated cause family with the critical set of every member.
///
/// For the minimal kind `critical(k) == cause(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauseFamily {
    n: usize,
    kind: FamilyKind,
    causes: Vec<Coalition>,
    critical: Vec<Coalition>,
}

impl CauseFamily {
    /// Builds a family from parts. Used by enumeration and by synthetic
    /// inputs; no game-level validation is performed.
    pub fn from_parts(n: usize, kind: FamilyKind, causes: Vec<Coalition>, critical: Vec<Coalition>) -> Result<Self> {
        if causes.len() != critical.len() {
            return Err(Error::InvalidCauseFamily("one critical set per cause is required".into()));
        }
        for (s, x) in causes.iter().zip(&critical) {
            if !s.fits(n) || !x.is_subset_of(*s) || x.is_empty() {
                return Err(Error::InvalidCauseFamily(format!(
                    "critical set {x} must be a non-empty subset of cause {s} within 1..{n}"
                )));
            }
            if kind == FamilyKind::Minimal && x != s {
                return Err(Error::InvalidCauseFamily(format!(
                    "minimal cause {s} must be its own critical set"
                )));
            }
        }
        Ok(CauseFamily {
            n,
            kind,
            causes,
            critical,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.causes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.causes.is_empty()
    }

    pub fn causes(&self) -> &[Coalition] {
        &self.causes
    }

    pub fn critical_sets(&self) -> &[Coalition] {
        &self.critical
    }

    /// `(S, chi(S))` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Coalition, Coalition)> + '_ {
        self.causes.iter().copied().zip(self.critical.iter().copied())
    }

    /// `M_i(v)` (members containing `i`) for the minimal kind, `G_i(v)`
    /// (members where `i` is critical) for the quasi-minimal kind.
    pub fn for_feature(&self, i: usize) -> impl Iterator<Item = Coalition> + '_ {
        self.iter().filter(move |(_, x)| x.contains(i)).map(|(s, _)| s)
    }

    /// `|M_i|` or `|G_i|` for every feature in one pass.
    pub fn counts(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for x in &self.critical {
            for i in x.iter() {
                out[i] += 1;
            }
        }
        out
    }

    /// Features that belong to no member's critical set.
    pub fn null_features(&self) -> Coalition {
        let covered = self.critical.iter().fold(Coalition::EMPTY, |a, x| a.union(*x));
        Coalition::full(self.n).difference(covered)
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::Capacity {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// `chi(S)` read from a truth table.
#[inline]
pub fn critical_in_table(table: &TruthTable, s: Coalition) -> Coalition {
    if !table.get(s) {
        return Coalition::EMPTY;
    }
    s.iter().filter(|&i| !table.get(s.without(i))).collect()
}

/// `chi(S) = {i in S : v(S) = 1, v(S \ {i}) = 0}`; empty when `S` loses.
pub fn critical_set<G: SimpleGame + ?Sized>(game: &G, s: Coalition) -> Coalition {
    if !game.eval(s) {
        return Coalition::EMPTY;
    }
    s.iter().filter(|&i| !game.eval(s.without(i))).collect()
}

/// Enumerates a family of the requested kind from a truth table.
pub fn enumerate_table(table: &TruthTable, kind: FamilyKind) -> CauseFamily {
    let n = table.n();
    let classify = |m: u64| {
        let s = Coalition::from_mask(m);
        let x = critical_in_table(table, s);
        let keep = match kind {
            FamilyKind::Minimal => !x.is_empty() && x == s,
            FamilyKind::QuasiMinimal => !x.is_empty(),
        };
        keep.then_some((s, x))
    };
    let end = 1u64 << n;
    #[cfg(feature = "parallel")]
    let pairs: Vec<(Coalition, Coalition)> = {
        use rayon::prelude::*;
        (0..end).into_par_iter().filter_map(classify).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let pairs: Vec<(Coalition, Coalition)> = (0..end).filter_map(classify).collect();
    let (causes, critical) = pairs.into_iter().unzip();
    CauseFamily {
        n,
        kind,
        causes,
        critical,
    }
}

/// Inclusion-minimal winning coalitions `M(v)`.
pub fn minimal_causes(game: &GameOracle) -> Result<CauseFamily> {
    check_capacity(game.n())?;
    Ok(enumerate_table(&game.tabulate()?, FamilyKind::Minimal))
}

/// Winning coalitions with at least one critical feature `G(v)`, each with `chi(S)`.
pub fn quasi_minimal_causes(game: &GameOracle) -> Result<CauseFamily> {
    check_capacity(game.n())?;
    Ok(enumerate_table(&game.tabulate()?, FamilyKind::QuasiMinimal))
}

/// Both families from a single tabulation.
pub fn cause_families(game: &GameOracle) -> Result<(CauseFamily, CauseFamily)> {
    check_capacity(game.n())?;
    let table = game.tabulate()?;
    Ok((
        enumerate_table(&table, FamilyKind::Minimal),
        enumerate_table(&table, FamilyKind::QuasiMinimal),
    ))
}

/// Inclusion-minimal members of an arbitrary list of coalitions, ascending.
pub fn minimal_elements(sets: &[Coalition]) -> Vec<Coalition> {
    let mut sorted = sets.to_vec();
    sorted.sort_unstable_by_key(|s| (s.len(), s.mask()));
    sorted.dedup();
    let mut kept: Vec<Coalition> = Vec::new();
    for s in sorted {
        if !kept.iter().any(|k| k.is_subset_of(s)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalition::all_coalitions;
    use crate::game::{make_dictator, make_explicit_cause_game, make_null_game, make_unanimity, make_weighted_voting};
    use crate::rational::ratio;

    fn c(v: &[usize]) -> Coalition {
        Coalition::from_indices(v.iter().map(|i| i - 1))
    }

    #[test]
    fn dictator_minimal() {
        let g = make_dictator(3, 0).unwrap();
        assert_eq!(minimal_causes(&g).unwrap().causes(), &[c(&[1])]);
    }

    #[test]
    fn example_family_round_trip() {
        let causes = [c(&[1, 2]), c(&[1, 3]), c(&[1, 4])];
        let g = make_explicit_cause_game(5, &causes).unwrap();
        let m = minimal_causes(&g).unwrap();
        assert_eq!(m.causes(), &causes);
        assert_eq!(m.for_feature(0).count(), 3);
        assert_eq!(m.counts(), vec![3, 1, 1, 1, 0]);
        assert_eq!(m.null_features(), c(&[5]));
    }

    #[test]
    fn weighted_minimal_brute_force() {
        // w = (1,1,2), q = 2: winning sets {3},{1,2},{1,3},{2,3},{1,2,3}.
        let g = make_weighted_voting(vec![ratio(1, 1), ratio(1, 1), ratio(2, 1)], ratio(2, 1)).unwrap();
        let mut m = minimal_causes(&g).unwrap().causes().to_vec();
        m.sort_by_key(|s| (s.len(), s.mask()));
        assert_eq!(m, vec![c(&[3]), c(&[1, 2])]);
    }

    #[test]
    fn quasi_minimal_of_unanimity_are_supersets() {
        let g = make_unanimity(5, c(&[1, 2])).unwrap();
        let q = quasi_minimal_causes(&g).unwrap();
        let expected: Vec<_> = all_coalitions(5).filter(|s| s.is_superset_of(c(&[1, 2]))).collect();
        assert_eq!(q.causes(), expected.as_slice());
        assert!(q.critical_sets().iter().all(|x| *x == c(&[1, 2])));
    }

    #[test]
    fn dictator_quasi_minimal_per_feature() {
        let g = make_dictator(2, 0).unwrap();
        let q = quasi_minimal_causes(&g).unwrap();
        assert_eq!(q.for_feature(0).collect::<Vec<_>>(), vec![c(&[1]), c(&[1, 2])]);
        assert_eq!(q.for_feature(1).count(), 0);
    }

    #[test]
    fn no_winning_sets_no_causes() {
        let g = make_null_game(4).unwrap();
        assert!(quasi_minimal_causes(&g).unwrap().is_empty());
        assert!(minimal_causes(&g).unwrap().is_empty());
    }

    #[test]
    fn critical_set_examples() {
        let u = make_unanimity(2, c(&[1, 2])).unwrap();
        assert_eq!(critical_set(&u, c(&[1, 2])), c(&[1, 2]));
        let d = make_dictator(2, 0).unwrap();
        assert_eq!(critical_set(&d, c(&[1, 2])), c(&[1]));
        assert_eq!(critical_set(&d, c(&[2])), Coalition::EMPTY);
    }

    #[test]
    fn capacity_error_above_limit() {
        let g = make_dictator(25, 0).unwrap();
        assert!(matches!(minimal_causes(&g), Err(Error::Capacity { n: 25, limit: 24 })));
    }

    #[test]
    fn minimal_elements_filters_supersets() {
        let sets = [c(&[1, 2, 3]), c(&[1, 2]), c(&[3]), c(&[2, 3]), c(&[1, 2])];
        assert_eq!(minimal_elements(&sets), vec![c(&[1, 2]), c(&[3])]);
    }

    #[test]
    fn from_parts_validates() {
        assert!(CauseFamily::from_parts(3, FamilyKind::Minimal, vec![c(&[1, 2])], vec![c(&[1])]).is_err());
        assert!(CauseFamily::from_parts(3, FamilyKind::QuasiMinimal, vec![c(&[1, 2])], vec![c(&[3])]).is_err());
        assert!(CauseFamily::from_parts(3, FamilyKind::QuasiMinimal, vec![c(&[1, 2])], vec![c(&[1])]).is_ok());
    }
}
