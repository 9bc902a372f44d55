//! Contraction `v_[T]` and permutation `pi v`.

use crate::coalition::Coalition;
use crate::error::{Error, Result};

use super::{GameKind, GameOracle, SimpleGame};

/// How features of a contracted game map back to the original features.
///
/// The merged feature `[T]` takes the smallest index in `T`; the remaining
/// features keep their relative order and are re-indexed densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    /// Index of `[T]` in the contracted game.
    pub merged: usize,
    /// The contracted set in original indices.
    pub contracted: Coalition,
    /// `originals[j]` is the set of original features new feature `j` stands for.
    pub originals: Vec<Coalition>,
}

impl ContractionMap {
    fn new(n: usize, t: Coalition) -> Self {
        let lead = t.first().expect("contracted set is non-empty");
        let mut originals = Vec::with_capacity(n - t.len() + 1);
        let mut merged = 0;
        for i in 0..n {
            if i == lead {
                merged = originals.len();
                originals.push(t);
            } else if !t.contains(i) {
                originals.push(Coalition::singleton(i));
            }
        }
        ContractionMap {
            merged,
            contracted: t,
            originals,
        }
    }

    /// Original coalition represented by a coalition of the contracted game.
    #[inline]
    pub fn lift(&self, s: Coalition) -> Coalition {
        s.iter().fold(Coalition::EMPTY, |acc, j| acc.union(self.originals[j]))
    }

    /// New index of an original feature outside `T`, or of `[T]` for members of `T`.
    pub fn new_index(&self, original: usize) -> Option<usize> {
        self.originals.iter().position(|o| o.contains(original))
    }

    /// Contracted-game coalition for an original coalition that either
    /// contains all of `T` or none of it.
    pub fn project(&self, s: Coalition) -> Option<Coalition> {
        let overlap = s.intersection(self.contracted);
        if !overlap.is_empty() && overlap != self.contracted {
            return None;
        }
        Some(
            self.originals
                .iter()
                .enumerate()
                .filter(|(_, o)| o.is_subset_of(s))
                .map(|(j, _)| j)
                .collect(),
        )
    }
}

/// `v_[T](S) = v((S \ [T]) u T)` if `[T]` in `S`, else `v(S)`.
#[derive(Clone, Debug)]
pub struct ContractedGame {
    base: GameOracle,
    map: ContractionMap,
}

impl ContractedGame {
    pub fn map(&self) -> &ContractionMap {
        &self.map
    }
}

impl SimpleGame for ContractedGame {
    fn n(&self) -> usize {
        self.map.originals.len()
    }

    fn eval(&self, s: Coalition) -> bool {
        self.base.eval(self.map.lift(s))
    }

    fn kind(&self) -> GameKind {
        GameKind::Contracted
    }
}

/// Merges the features of `t` (at least two) into one feature `[T]`.
pub fn contract(game: &GameOracle, t: Coalition) -> Result<(GameOracle, ContractionMap)> {
    let n = game.n();
    if t.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "contraction needs at least two features, got {t}"
        )));
    }
    if !t.fits(n) {
        return Err(Error::InvalidArgument(format!("contracted set {t} exceeds 1..{n}")));
    }
    let map = ContractionMap::new(n, t);
    let g = ContractedGame {
        base: game.clone(),
        map: map.clone(),
    };
    Ok((GameOracle::new(g), map))
}

/// `(pi v)(S) = v({pi(i) : i in S})`.
#[derive(Clone, Debug)]
pub struct PermutedGame {
    base: GameOracle,
    perm: Vec<usize>,
}

impl SimpleGame for PermutedGame {
    fn n(&self) -> usize {
        self.perm.len()
    }

    fn eval(&self, s: Coalition) -> bool {
        self.base.eval(apply_permutation(&self.perm, s))
    }

    fn kind(&self) -> GameKind {
        GameKind::Permuted
    }
}

/// Image `{pi(i) : i in S}` of a coalition.
#[inline]
pub fn apply_permutation(perm: &[usize], s: Coalition) -> Coalition {
    s.iter().map(|i| perm[i]).collect()
}

pub(crate) fn check_permutation(n: usize, perm: &[usize]) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidArgument(format!(
            "permutation has {} entries for {n} features",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a bijection on 0..{n}")));
        }
    }
    Ok(())
}

/// Relabels features by the bijection `perm` (0-based, `perm[i] = pi(i)`).
pub fn permute(game: &GameOracle, perm: &[usize]) -> Result<GameOracle> {
    check_permutation(game.n(), perm)?;
    Ok(GameOracle::new(PermutedGame {
        base: game.clone(),
        perm: perm.to_vec(),
    }))
}
