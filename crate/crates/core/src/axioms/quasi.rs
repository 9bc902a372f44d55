//! Synthetic quasi-minimal families and the alternate Johnston index.
//!
//! A synthetic family is an arbitrary collection `G` of non-empty coalitions
//! with a feasible mapping `chi` (`chi(S)` a non-empty subset of `S`). It
//! need not come from any game.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::causes::{quasi_minimal_causes, CauseFamily, FamilyKind};
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::GameOracle;
use crate::indices::{IndexKind, IndexVector, Scale};
use crate::rational::{ratio, Rational};

use super::generate::random_subset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntheticQuasiFamily {
    n: usize,
    /// Member to its critical set, in ascending member order.
    members: BTreeMap<Coalition, Coalition>,
}

impl SyntheticQuasiFamily {
    /// Validates distinct non-empty members and a feasible mapping.
    pub fn new(n: usize, pairs: Vec<(Coalition, Coalition)>) -> Result<Self> {
        let mut members = BTreeMap::new();
        for (s, x) in pairs {
            if s.is_empty() || !s.fits(n) {
                return Err(Error::InvalidCauseFamily(format!("member {s} must be a non-empty subset of 1..{n}")));
            }
            if x.is_empty() || !x.is_subset_of(s) {
                return Err(Error::InvalidArgument(format!(
                    "infeasible mapping: chi({s}) = {x} must be a non-empty subset of {s}"
                )));
            }
            if members.insert(s, x).is_some() {
                return Err(Error::InvalidCauseFamily(format!("member {s} listed twice")));
            }
        }
        Ok(SyntheticQuasiFamily { n, members })
    }

    /// `G(v)` with `chi^v` from a real game.
    pub fn from_game(game: &GameOracle) -> Result<Self> {
        Self::from_cause_family(&quasi_minimal_causes(game)?)
    }

    pub fn from_cause_family(family: &CauseFamily) -> Result<Self> {
        if family.kind() != FamilyKind::QuasiMinimal {
            return Err(Error::InvalidArgument("a quasi-minimal family is required".into()));
        }
        Self::new(family.n(), family.iter().collect())
    }

    /// Random family of up to `max_members` members with a random feasible
    /// mapping; critical sets avoid the features outside `critical_pool`
    /// whenever a member allows it.
    pub fn random<R: Rng>(rng: &mut R, n: usize, max_members: usize, critical_pool: Coalition) -> Self {
        let mut members = BTreeMap::new();
        let count = rng.gen_range(1..=max_members.max(1));
        for _ in 0..count {
            let s = random_subset(rng, Coalition::full(n));
            let allowed = s.intersection(critical_pool);
            let x = if allowed.is_empty() { random_subset(rng, s) } else { random_subset(rng, allowed) };
            members.entry(s).or_insert(x);
        }
        SyntheticQuasiFamily { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `(S, chi(S))` in ascending member order.
    pub fn iter(&self) -> impl Iterator<Item = (Coalition, Coalition)> + '_ {
        self.members.iter().map(|(s, x)| (*s, *x))
    }

    pub fn chi(&self, s: Coalition) -> Option<Coalition> {
        self.members.get(&s).copied()
    }

    /// `G_i = {S in G : i in chi(S)}`.
    pub fn for_feature(&self, i: usize) -> Vec<Coalition> {
        self.iter().filter(|(_, x)| x.contains(i)).map(|(s, _)| s).collect()
    }

    /// Sub-family keeping the members accepted by `keep`, with the same mapping.
    pub fn filter(&self, mut keep: impl FnMut(Coalition, Coalition) -> bool) -> Self {
        SyntheticQuasiFamily {
            n: self.n,
            members: self.members.iter().filter(|(s, x)| keep(**s, **x)).map(|(s, x)| (*s, *x)).collect(),
        }
    }

    /// `(pi G, pi chi)`: every member and its critical set relabeled by `perm`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let map = |s: Coalition| s.iter().map(|i| perm[i]).collect::<Coalition>();
        SyntheticQuasiFamily {
            n: self.n,
            members: self.members.iter().map(|(s, x)| (map(*s), map(*x))).collect(),
        }
    }
}

/// `omega_i = sum_{S in G_i} 1 / |chi(S)|`, reported on the per-cause scale.
pub fn alternate_johnston(family: &SyntheticQuasiFamily) -> IndexVector {
    let mut values = vec![Rational::zero(); family.n];
    for (_, x) in family.iter() {
        let share = ratio(1, x.len() as i64);
        for i in x.iter() {
            values[i] += &share;
        }
    }
    IndexVector {
        kind: IndexKind::Johnston,
        scale: Scale::PerCause,
        values,
    }
}
