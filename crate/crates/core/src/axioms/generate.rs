//! Seeded generators for random monotone games and antichains.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::causes::minimal_elements;
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{make_explicit_cause_game, GameOracle};

/// Largest feature count offered for randomized axiom sweeps.
pub const SWEEP_LIMIT: usize = 12;

/// Deterministic generator for trial `t` of a run keyed by `seed`.
pub fn trial_rng(seed: u64, t: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    rng
}

/// A uniformly random non-empty subset of `allowed` of random size.
pub fn random_subset<R: Rng>(rng: &mut R, allowed: Coalition) -> Coalition {
    let pool: Vec<usize> = allowed.iter().collect();
    if pool.is_empty() {
        return Coalition::EMPTY;
    }
    let k = rng.gen_range(1..=pool.len());
    pool.choose_multiple(rng, k).copied().collect()
}

/// Random antichain over `allowed` built from `draws` random subsets.
///
/// Small sets are favored (sizes are drawn from a halved range half the
/// time) so that games have a mix of short and long causes.
pub fn random_antichain<R: Rng>(rng: &mut R, allowed: Coalition, draws: usize) -> Vec<Coalition> {
    let pool: Vec<usize> = allowed.iter().collect();
    if pool.is_empty() {
        return Vec::new();
    }
    let sets: Vec<Coalition> = (0..draws)
        .map(|_| {
            let cap = if rng.gen_bool(0.5) { pool.len().div_ceil(2) } else { pool.len() };
            let k = rng.gen_range(1..=cap);
            pool.choose_multiple(rng, k).copied().collect()
        })
        .collect();
    minimal_elements(&sets)
}

/// Random monotone game: the up-closure of a random antichain. `density`
/// in `[0, 1]` scales the number of drawn sets (`round(2 n density)`);
/// density 0 gives the game with no winning coalition.
pub fn random_monotone_game(n: usize, density: f64, seed: u64) -> Result<GameOracle> {
    if n == 0 || n > SWEEP_LIMIT {
        return Err(Error::InvalidArgument(format!("random games need 1 <= n <= {SWEEP_LIMIT}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!("density {density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = (2.0 * n as f64 * density).round() as usize;
    let antichain = random_antichain(&mut rng, Coalition::full(n), draws);
    make_explicit_cause_game(n, &antichain)
}

/// Uniformly random permutation of `0..n` (`perm[i] = pi(i)`).
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Members of `family` containing feature `i`.
pub fn containing(family: &[Coalition], i: usize) -> Vec<Coalition> {
    family.iter().copied().filter(|s| s.contains(i)).collect()
}

/// Smallest member size among sets containing `i`.
pub fn min_size_containing(family: &[Coalition], i: usize) -> Option<usize> {
    family.iter().filter(|s| s.contains(i)).map(|s| s.len()).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causes::minimal_causes;

    #[test]
    fn zero_density_gives_null_game() {
        let g = random_monotone_game(5, 0.0, 1).unwrap();
        assert!(minimal_causes(&g).unwrap().is_empty());
    }

    #[test]
    fn generated_games_are_monotone_and_round_trip() {
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_antichain(&mut rng, Coalition::full(5), 6);
            let g = make_explicit_cause_game(5, &a).unwrap();
            g.check_simple().unwrap();
            assert_eq!(minimal_causes(&g).unwrap().causes(), a.as_slice());
        }
        let g = random_monotone_game(5, 0.5, 9).unwrap();
        g.check_simple().unwrap();
    }

    #[test]
    fn generator_is_deterministic() {
        let a = random_monotone_game(6, 0.7, 42).unwrap();
        let b = random_monotone_game(6, 0.7, 42).unwrap();
        assert_eq!(a.tabulate().unwrap(), b.tabulate().unwrap());
    }

    #[test]
    fn trial_streams_differ() {
        let x: u64 = trial_rng(5, 0).gen();
        let y: u64 = trial_rng(5, 1).gen();
        assert_ne!(x, y);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(random_monotone_game(0, 0.5, 0).is_err());
        assert!(random_monotone_game(13, 0.5, 0).is_err());
        assert!(random_monotone_game(4, 1.5, 0).is_err());
    }
}
