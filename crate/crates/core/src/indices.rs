//! Exact power indices over enumerated cause families.
//!
//! All arithmetic is exact rational. The raw scale carries the `1/2^(n-1)`
//! normalization; the per-cause scale drops it. Responsibility and
//! Shapley-Shubik have no such factor and are always reported raw.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::causes::{cause_families, CauseFamily, FamilyKind};
use crate::error::{Error, Result};
use crate::game::GameOracle;
use crate::rational::{factorial, from_u64, inv_pow2, ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexKind {
    Responsibility,
    HollerPackel,
    DeeganPackel,
    Johnston,
    Shapley,
    Banzhaf,
}

impl IndexKind {
    pub const ALL: [IndexKind; 6] = [
        IndexKind::Responsibility,
        IndexKind::HollerPackel,
        IndexKind::DeeganPackel,
        IndexKind::Johnston,
        IndexKind::Shapley,
        IndexKind::Banzhaf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Responsibility => "responsibility",
            IndexKind::HollerPackel => "holler-packel",
            IndexKind::DeeganPackel => "deegan-packel",
            IndexKind::Johnston => "johnston",
            IndexKind::Shapley => "shapley",
            IndexKind::Banzhaf => "banzhaf",
        }
    }

    /// Whether the index aggregates minimal (vs quasi-minimal) causes.
    pub fn family(self) -> FamilyKind {
        match self {
            IndexKind::Responsibility | IndexKind::HollerPackel | IndexKind::DeeganPackel => FamilyKind::Minimal,
            IndexKind::Johnston | IndexKind::Shapley | IndexKind::Banzhaf => FamilyKind::QuasiMinimal,
        }
    }

    /// Whether the index has a `1/2^(n-1)` factor that the per-cause scale drops.
    pub fn has_scale(self) -> bool {
        !matches!(self, IndexKind::Responsibility | IndexKind::Shapley)
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IndexKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown index kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    #[default]
    Raw,
    PerCause,
}

impl Scale {
    pub fn name(self) -> &'static str {
        match self {
            Scale::Raw => "raw",
            Scale::PerCause => "per-cause",
        }
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Scale::Raw),
            "per-cause" => Ok(Scale::PerCause),
            _ => Err(Error::InvalidArgument(format!("unknown scale {s:?}"))),
        }
    }
}

/// Per-feature attributions for one index kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexVector {
    pub kind: IndexKind,
    pub scale: Scale,
    pub values: Vec<Rational>,
}

impl IndexVector {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |a, v| a + v)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(crate::rational::to_f64).collect()
    }

    /// Feature order by value descending, ties by ascending feature id.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.values[b].cmp(&self.values[a]).then(a.cmp(&b)));
        order
    }
}

fn require(family: &CauseFamily, kind: FamilyKind, what: IndexKind) -> Result<()> {
    if family.kind() != kind {
        return Err(Error::InvalidArgument(format!(
            "{what} needs a {kind:?} cause family, got {:?}",
            family.kind()
        )));
    }
    Ok(())
}

fn scale_factor(n: usize, scale: Scale) -> Rational {
    match scale {
        Scale::Raw => inv_pow2(n - 1),
        Scale::PerCause => from_u64(1),
    }
}

/// `tally[i][k]`: members of `family` counted for feature `i` whose size
/// (or critical-set size, with `by_critical`) is `k`.
fn tally(family: &CauseFamily, by_critical: bool) -> Vec<Vec<u64>> {
    let n = family.n();
    let mut t = vec![vec![0u64; n + 1]; n];
    for (s, x) in family.iter() {
        let k = if by_critical { x.len() } else { s.len() };
        for i in x.iter() {
            t[i][k] += 1;
        }
    }
    t
}

fn sum_reciprocals(counts: &[u64]) -> Rational {
    counts
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .fold(Rational::zero(), |acc, (k, &c)| acc + ratio(c as i64, k as i64))
}

/// `rho_i = 1 / min_{S in M_i} |S|`, or 0 when `M_i` is empty.
pub fn responsibility(family: &CauseFamily) -> Result<IndexVector> {
    require(family, FamilyKind::Minimal, IndexKind::Responsibility)?;
    let mut smallest = vec![usize::MAX; family.n()];
    for s in family.causes() {
        for i in s.iter() {
            smallest[i] = smallest[i].min(s.len());
        }
    }
    let values = smallest
        .into_iter()
        .map(|k| if k == usize::MAX { Rational::zero() } else { ratio(1, k as i64) })
        .collect();
    Ok(IndexVector {
        kind: IndexKind::Responsibility,
        scale: Scale::Raw,
        values,
    })
}

/// `eta_i = |M_i| / 2^(n-1)` (raw) or `|M_i|` (per-cause).
pub fn holler_packel(family: &CauseFamily, scale: Scale) -> Result<IndexVector> {
    require(family, FamilyKind::Minimal, IndexKind::HollerPackel)?;
    let f = scale_factor(family.n(), scale);
    let values = family.counts().into_iter().map(|c| from_u64(c) * &f).collect();
    Ok(IndexVector {
        kind: IndexKind::HollerPackel,
        scale,
        values,
    })
}

/// `phi_i = (1/2^(n-1)) sum_{S in M_i} 1/|S|`.
pub fn deegan_packel(family: &CauseFamily, scale: Scale) -> Result<IndexVector> {
    require(family, FamilyKind::Minimal, IndexKind::DeeganPackel)?;
    let f = scale_factor(family.n(), scale);
    let values = tally(family, false).iter().map(|t| sum_reciprocals(t) * &f).collect();
    Ok(IndexVector {
        kind: IndexKind::DeeganPackel,
        scale,
        values,
    })
}

/// `psi_i = (1/2^(n-1)) sum_{S in G_i} 1/|chi(S)|`.
pub fn johnston(family: &CauseFamily, scale: Scale) -> Result<IndexVector> {
    require(family, FamilyKind::QuasiMinimal, IndexKind::Johnston)?;
    let f = scale_factor(family.n(), scale);
    let values = tally(family, true).iter().map(|t| sum_reciprocals(t) * &f).collect();
    Ok(IndexVector {
        kind: IndexKind::Johnston,
        scale,
        values,
    })
}

/// `beta_i = |G_i| / 2^(n-1)`.
pub fn banzhaf_from_family(family: &CauseFamily, scale: Scale) -> Result<IndexVector> {
    require(family, FamilyKind::QuasiMinimal, IndexKind::Banzhaf)?;
    let f = scale_factor(family.n(), scale);
    let values = family.counts().into_iter().map(|c| from_u64(c) * &f).collect();
    Ok(IndexVector {
        kind: IndexKind::Banzhaf,
        scale,
        values,
    })
}

/// `sigma_i = sum_{S in G_i} (|S|-1)! (n-|S|)! / n!`.
pub fn shapley_from_family(family: &CauseFamily) -> Result<IndexVector> {
    require(family, FamilyKind::QuasiMinimal, IndexKind::Shapley)?;
    let n = family.n();
    let n_fact = factorial(n);
    let weights: Vec<Rational> = (0..=n)
        .map(|k| {
            if k == 0 {
                Rational::zero()
            } else {
                Rational::new(factorial(k - 1) * factorial(n - k), n_fact.clone())
            }
        })
        .collect();
    let values = tally(family, false)
        .iter()
        .map(|t| {
            t.iter()
                .zip(&weights)
                .filter(|(c, _)| **c > 0)
                .fold(Rational::zero(), |acc, (&c, w)| acc + w * Rational::from_integer(BigInt::from(c)))
        })
        .collect();
    Ok(IndexVector {
        kind: IndexKind::Shapley,
        scale: Scale::Raw,
        values,
    })
}

/// Simple-game Shapley-Shubik index.
pub fn shapley(game: &GameOracle) -> Result<IndexVector> {
    let (_, quasi) = cause_families(game)?;
    shapley_from_family(&quasi)
}

/// Raw Banzhaf index.
pub fn banzhaf(game: &GameOracle) -> Result<IndexVector> {
    let (_, quasi) = cause_families(game)?;
    banzhaf_from_family(&quasi, Scale::Raw)
}

/// Dispatches to the right family for `kind`.
pub fn index_from_families(
    kind: IndexKind,
    minimal: &CauseFamily,
    quasi: &CauseFamily,
    scale: Scale,
) -> Result<IndexVector> {
    match kind {
        IndexKind::Responsibility => responsibility(minimal),
        IndexKind::HollerPackel => holler_packel(minimal, scale),
        IndexKind::DeeganPackel => deegan_packel(minimal, scale),
        IndexKind::Johnston => johnston(quasi, scale),
        IndexKind::Shapley => shapley_from_family(quasi),
        IndexKind::Banzhaf => banzhaf_from_family(quasi, scale),
    }
}

/// One index of a game, enumerating its causes first.
pub fn compute_index(game: &GameOracle, kind: IndexKind, scale: Scale) -> Result<IndexVector> {
    let (minimal, quasi) = cause_families(game)?;
    index_from_families(kind, &minimal, &quasi, scale)
}

/// All six indices from one enumeration, in [`IndexKind::ALL`] order.
pub fn all_indices(game: &GameOracle, scale: Scale) -> Result<Vec<IndexVector>> {
    let (minimal, quasi) = cause_families(game)?;
    IndexKind::ALL
        .into_iter()
        .map(|k| index_from_families(k, &minimal, &quasi, scale))
        .collect()
}
