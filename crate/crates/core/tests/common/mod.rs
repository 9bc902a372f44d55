//! Definition-level oracles, written independently of the library's
//! enumeration and index code. Everything here is exponential on purpose.

#![allow(dead_code)]

use causex_core::coalition::{all_coalitions, Coalition};
use causex_core::game::make_truth_table;
use causex_core::rational::{ratio, Rational};
use causex_core::GameOracle;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

/// Random monotone game: the upward closure of a few random generators.
pub fn random_game<R: Rng>(rng: &mut R, n: usize) -> GameOracle {
    let generators: Vec<u64> = (0..rng.gen_range(1..=n + 1))
        .map(|_| loop {
            let m = rng.gen_range(1..1u64 << n);
            if rng.gen_bool(0.5) || m.count_ones() as usize <= n / 2 + 1 {
                break m;
            }
        })
        .collect();
    let bits: Vec<bool> = (0..1u64 << n).map(|s| generators.iter().any(|g| g & s == *g)).collect();
    make_truth_table(n, &bits).expect("upward closures are monotone")
}

pub fn win(game: &GameOracle, s: u64) -> bool {
    game.eval(Coalition::from_mask(s))
}

/// Members of `s` whose removal makes a winning `s` lose.
pub fn critical(game: &GameOracle, s: u64) -> Vec<usize> {
    if !win(game, s) {
        return Vec::new();
    }
    (0..game.n())
        .filter(|&i| s >> i & 1 == 1 && !win(game, s & !(1 << i)))
        .collect()
}

/// Winning coalitions every member of which is critical.
pub fn minimal(game: &GameOracle) -> Vec<u64> {
    (1..1u64 << game.n())
        .filter(|&s| win(game, s) && critical(game, s).len() == s.count_ones() as usize)
        .collect()
}

/// Winning coalitions with at least one critical member, with that set.
pub fn quasi_minimal(game: &GameOracle) -> Vec<(u64, Vec<usize>)> {
    (1..1u64 << game.n())
        .filter_map(|s| {
            let x = critical(game, s);
            (!x.is_empty()).then_some((s, x))
        })
        .collect()
}

fn pow2(k: usize) -> Rational {
    Rational::from_integer(BigInt::from(1u64) << k)
}

/// `1 / min |S|` over minimal causes containing `i`.
pub fn responsibility(game: &GameOracle) -> Vec<Rational> {
    let m = minimal(game);
    (0..game.n())
        .map(|i| {
            m.iter()
                .filter(|s| *s >> i & 1 == 1)
                .map(|s| s.count_ones() as i64)
                .min()
                .map_or_else(Rational::zero, |k| ratio(1, k))
        })
        .collect()
}

pub fn holler_packel(game: &GameOracle) -> Vec<Rational> {
    let m = minimal(game);
    (0..game.n())
        .map(|i| Rational::from_integer(BigInt::from(m.iter().filter(|s| *s >> i & 1 == 1).count())) / pow2(game.n() - 1))
        .collect()
}

pub fn deegan_packel(game: &GameOracle) -> Vec<Rational> {
    let m = minimal(game);
    (0..game.n())
        .map(|i| {
            m.iter()
                .filter(|s| *s >> i & 1 == 1)
                .fold(Rational::zero(), |a, s| a + ratio(1, s.count_ones() as i64))
                / pow2(game.n() - 1)
        })
        .collect()
}

pub fn johnston(game: &GameOracle) -> Vec<Rational> {
    let g = quasi_minimal(game);
    (0..game.n())
        .map(|i| {
            g.iter()
                .filter(|(_, x)| x.contains(&i))
                .fold(Rational::zero(), |a, (_, x)| a + ratio(1, x.len() as i64))
                / pow2(game.n() - 1)
        })
        .collect()
}

/// Average marginal contribution over all `n!` arrival orders.
pub fn shapley_by_permutations(game: &GameOracle) -> Vec<Rational> {
    let n = game.n();
    let mut order: Vec<usize> = (0..n).collect();
    let mut pivots = vec![0i64; n];
    let mut count = 0i64;
    loop {
        let mut s = 0u64;
        for &i in &order {
            if !win(game, s) && win(game, s | 1 << i) {
                pivots[i] += 1;
            }
            s |= 1 << i;
        }
        count += 1;
        if !next_permutation(&mut order) {
            break;
        }
    }
    pivots.iter().map(|&p| ratio(p, count)).collect()
}

/// Marginal contributions over the `2^(n-1)` coalitions without `i`.
pub fn banzhaf_by_marginals(game: &GameOracle) -> Vec<Rational> {
    let n = game.n();
    (0..n)
        .map(|i| {
            let swings = (0..1u64 << n)
                .filter(|s| s >> i & 1 == 0 && !win(game, *s) && win(game, s | 1 << i))
                .count();
            Rational::from_integer(BigInt::from(swings)) / pow2(n - 1)
        })
        .collect()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(k) = (0..v.len().saturating_sub(1)).rev().find(|&k| v[k] < v[k + 1]) else {
        return false;
    };
    let l = (k + 1..v.len()).rev().find(|&l| v[k] < v[l]).unwrap();
    v.swap(k, l);
    v[k + 1..].reverse();
    true
}

/// Every coalition of `n` features as a mask iterator (for readability at call sites).
pub fn masks(n: usize) -> impl Iterator<Item = Coalition> {
    all_coalitions(n)
}
