//! Test vectors from the subset-sum (PARTITION) reduction.
//!
//! For positive integers `a_1..a_m` with total `W`, the weighted voting game
//! with weights `a_1..a_m, 1` and threshold `(W+1)/2` makes the extra
//! feature `m+1` pivotal exactly in the coalitions `A' u {m+1}` where `A'`
//! sums to `W/2`. When `W` is even, the number of minimal causes containing
//! the extra feature therefore counts the subsets of `A` summing to `W/2`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::causes::cause_families;
use crate::error::{Error, Result};
use crate::game::{make_weighted_voting, GameOracle};
use crate::indices::{holler_packel, Scale};
use crate::rational::{from_u64, ratio, Rational};

/// Largest multiset accepted (the game has one more feature).
pub const PARTITION_LIMIT: usize = 23;

#[derive(Clone, Debug)]
pub struct PartitionVector {
    pub values: Vec<u64>,
    pub total: u64,
    pub game: GameOracle,
    /// Index subsets of the multiset summing to `W/2` (0 when `W` is odd).
    pub expected_count: u64,
    /// Minimal causes containing the extra feature, by enumeration.
    pub minimal_count: u64,
    /// Quasi-minimal causes where the extra feature is critical.
    pub quasi_count: u64,
    /// Raw Holler-Packel value of the extra feature.
    pub holler_packel_last: Rational,
}

impl PartitionVector {
    /// Enumeration agrees with the subset-sum count (meaningful for even totals).
    pub fn agrees(&self) -> bool {
        self.total % 2 == 1 || (self.minimal_count == self.expected_count && self.quasi_count == self.expected_count)
    }
}

/// Number of index subsets of `values` summing to `target`.
pub fn subset_sum_count(values: &[u64], target: u64) -> u64 {
    let t = target as usize;
    let mut ways = vec![0u64; t + 1];
    ways[0] = 1;
    for &a in values {
        let a = a as usize;
        if a > t {
            continue;
        }
        for s in (a..=t).rev() {
            ways[s] += ways[s - a];
        }
    }
    ways[t]
}

/// Builds the reduction game for a multiset of positive integers.
pub fn partition_game(values: &[u64]) -> Result<PartitionVector> {
    if values.is_empty() || values.len() > PARTITION_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "a partition instance needs between 1 and {PARTITION_LIMIT} values"
        )));
    }
    if values.contains(&0) {
        return Err(Error::InvalidArgument("partition values must be positive".into()));
    }
    let total: u64 = values.iter().sum();
    let mut weights: Vec<Rational> = values.iter().map(|&a| from_u64(a)).collect();
    weights.push(from_u64(1));
    let threshold = ratio(total as i64 + 1, 2);
    let game = make_weighted_voting(weights, threshold)?;
    let (minimal, quasi) = cause_families(&game)?;
    let last = values.len();
    let minimal_count = minimal.for_feature(last).count() as u64;
    let quasi_count = quasi.for_feature(last).count() as u64;
    let expected_count = if total.is_multiple_of(2) { subset_sum_count(values, total / 2) } else { 0 };
    let holler_packel_last = holler_packel(&minimal, Scale::Raw)?.values[last].clone();
    Ok(PartitionVector {
        values: values.to_vec(),
        total,
        game,
        expected_count,
        minimal_count,
        quasi_count,
        holler_packel_last,
    })
}

/// `count` random multisets with 1..=`max_len` values in `1..=max_value`,
/// each adjusted to an even total by bumping its last value when needed.
pub fn partition_vectors(count: usize, max_len: usize, max_value: u64, seed: u64) -> Result<Vec<PartitionVector>> {
    if max_len == 0 || max_len > PARTITION_LIMIT || max_value == 0 {
        return Err(Error::InvalidArgument("invalid partition vector bounds".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let mut values: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=max_value)).collect();
            if values.iter().sum::<u64>() % 2 == 1 {
                *values.last_mut().expect("non-empty") += 1;
            }
            partition_game(&values)
        })
        .collect()
}
