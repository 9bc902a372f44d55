//! Feature coalitions as 64-bit masks.
//!
//! Feature indices are 0-based here; user-facing I/O converts to 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest feature count a coalition can address.
pub const MAX_FEATURES: usize = 64;

/// A subset of the features `0..n`, stored as a bit mask.
///
/// The feature count is carried by the game a coalition is evaluated
/// against, not by the coalition itself.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    #[inline]
    pub const fn from_mask(mask: u64) -> Self {
        Coalition(mask)
    }

    #[inline]
    pub const fn mask(self) -> u64 {
        self.0
    }

    /// The grand coalition over `n` features.
    #[inline]
    pub fn full(n: usize) -> Self {
        Coalition(full_mask(n))
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_FEATURES);
        Coalition(1u64 << i)
    }

    /// Builds a coalition from 0-based indices. Panics on an index >= 64.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut mask = 0u64;
        for i in indices {
            assert!(i < MAX_FEATURES, "feature index {i} out of range");
            mask |= 1u64 << i;
        }
        Coalition(mask)
    }

    #[inline]
    pub const fn contains(self, i: usize) -> bool {
        i < MAX_FEATURES && (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_superset_of(self, other: Coalition) -> bool {
        other.is_subset_of(self)
    }

    #[inline]
    pub const fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Coalition) -> Self {
        Coalition(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Coalition) -> Self {
        Coalition(self.0 & !other.0)
    }

    #[inline]
    pub const fn with(self, i: usize) -> Self {
        Coalition(self.0 | (1u64 << i))
    }

    #[inline]
    pub const fn without(self, i: usize) -> Self {
        Coalition(self.0 & !(1u64 << i))
    }

    /// True when every member is below `n`.
    #[inline]
    pub fn fits(self, n: usize) -> bool {
        self.0 & !full_mask(n) == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    #[inline]
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Members as 1-based indices, for user-facing output.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

#[inline]
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= MAX_FEATURES);
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Ascending iterator over the members of a coalition.
#[derive(Clone, Debug)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

impl IntoIterator for Coalition {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl FromIterator<usize> for Coalition {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Coalition::from_indices(iter)
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Displays 1-based members, e.g. `{1,3}`.
impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

/// Iterates all subsets of `0..n` in ascending mask order.
pub fn all_coalitions(n: usize) -> impl Iterator<Item = Coalition> {
    assert!(n < 64, "cannot enumerate 2^{n} coalitions");
    (0..(1u64 << n)).map(Coalition)
}

/// Iterates the non-empty proper and improper subsets of `set` (Gosper-free
/// submask walk, descending).
pub fn subsets_of(set: Coalition) -> impl Iterator<Item = Coalition> {
    let full = set.0;
    let mut cur = Some(full);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 { None } else { Some((s - 1) & full) };
        Some(Coalition(s))
    })
}
