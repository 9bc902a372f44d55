//! Monte Carlo estimators for the Johnston, Deegan-Packel, Holler-Packel and
//! responsibility indices.
//!
//! Every run draws one shared stream of coalitions used for all features.
//! Sample `j` is a pure function of `(seed, j)`: it is the `j`-th 64-bit word
//! pair of a ChaCha8 stream keyed by the seed, masked to `n` bits. Per-sample
//! contributions are tallied as integer counts and turned into exact
//! rationals at the end, so serial and parallel runs agree bit for bit.

use num_traits::Zero;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::causes::ENUMERATION_LIMIT;
use crate::coalition::{full_mask, Coalition};
use crate::error::{Error, Result};
use crate::game::GameOracle;
use crate::indices::{IndexKind, IndexVector, Scale};
use crate::rational::{from_u64, ratio, Rational};

/// Samples per parallel work unit.
const CHUNK: u64 = 4096;

/// How many samples to draw and from which stream.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplingConfig {
    /// Number of samples; `2^n` in exhaustive mode.
    pub m: u64,
    pub seed: u64,
    /// Accuracy target the sample count was derived from, if any.
    pub epsilon: Option<f64>,
    /// Failure probability the sample count was derived from, if any.
    pub delta: Option<f64>,
    /// Visit every coalition exactly once instead of sampling.
    pub exhaustive: bool,
}

impl SamplingConfig {
    /// `m = sample_size(epsilon, delta, n)`.
    pub fn from_bounds(epsilon: f64, delta: f64, n: usize, seed: u64) -> Result<Self> {
        Ok(SamplingConfig {
            m: sample_size(epsilon, delta, n)?,
            seed,
            epsilon: Some(epsilon),
            delta: Some(delta),
            exhaustive: false,
        })
    }

    /// A fixed sample count.
    pub fn with_samples(m: u64, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("at least one sample is required".into()));
        }
        Ok(SamplingConfig {
            m,
            seed,
            epsilon: None,
            delta: None,
            exhaustive: false,
        })
    }

    /// Every coalition of an `n`-feature game once.
    pub fn exhaustive(n: usize) -> Result<Self> {
        if n > ENUMERATION_LIMIT {
            return Err(Error::Capacity {
                n,
                limit: ENUMERATION_LIMIT,
            });
        }
        Ok(SamplingConfig {
            m: 1u64 << n,
            seed: 0,
            epsilon: None,
            delta: None,
            exhaustive: true,
        })
    }
}

/// `ceil(ln(2n / delta) / epsilon^2)`.
pub fn sample_size(epsilon: f64, delta: f64, n: usize) -> Result<u64> {
    let open_unit = |x: f64| x > 0.0 && x < 1.0;
    if !open_unit(epsilon) && epsilon != 1.0 {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    if !open_unit(delta) {
        return Err(Error::InvalidArgument(format!("delta must lie in (0, 1), got {delta}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let m = ((2.0 * n as f64 / delta).ln() / (epsilon * epsilon)).ceil();
    if !m.is_finite() || m > u64::MAX as f64 {
        return Err(Error::InvalidArgument("sample size overflows".into()));
    }
    Ok((m as u64).max(1))
}

/// The `j`-th coalition of the stream keyed by `seed`.
pub fn sample_coalition(seed: u64, j: u64, n: usize) -> Coalition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(2 * u128::from(j));
    Coalition::from_mask(rng.next_u64() & full_mask(n))
}

/// Result of one estimator run, with its configuration echoed.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateReport {
    /// Raw-scale estimates.
    pub estimates: IndexVector,
    pub config: SamplingConfig,
    /// Samples that contributed to each feature.
    pub hits: Vec<u64>,
    /// Game evaluations spent: one per sample plus `|S|` for each winning
    /// sample (critical-set and minimality checks).
    pub oracle_calls: u64,
}

/// Integer tallies: `counts[i][k]` samples that hit feature `i` with
/// size statistic `k` (`|chi(S)|` or `|S|` depending on the estimator).
#[derive(Clone, Debug)]
struct Tally {
    counts: Vec<Vec<u64>>,
    oracle_calls: u64,
}

impl Tally {
    fn new(n: usize) -> Self {
        Tally {
            counts: vec![vec![0; n + 1]; n],
            oracle_calls: 0,
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self.oracle_calls += other.oracle_calls;
        self
    }
}

/// Records one coalition: which features it hits and with what size statistic.
fn observe(game: &GameOracle, kind: IndexKind, s: Coalition, tally: &mut Tally) {
    tally.oracle_calls += 1;
    if !game.eval(s) {
        return;
    }
    tally.oracle_calls += s.len() as u64;
    let chi: Coalition = s.iter().filter(|&i| !game.eval(s.without(i))).collect();
    if chi.is_empty() {
        return;
    }
    match kind {
        IndexKind::Johnston => {
            let k = chi.len();
            for i in chi.iter() {
                tally.counts[i][k] += 1;
            }
        }
        IndexKind::DeeganPackel | IndexKind::HollerPackel => {
            if chi == s {
                let k = s.len();
                for i in s.iter() {
                    tally.counts[i][k] += 1;
                }
            }
        }
        IndexKind::Responsibility => {
            let k = s.len();
            for i in chi.iter() {
                tally.counts[i][k] += 1;
            }
        }
        IndexKind::Shapley | IndexKind::Banzhaf => unreachable!("rejected before sampling"),
    }
}

fn tally_range(game: &GameOracle, kind: IndexKind, config: &SamplingConfig, start: u64, end: u64) -> Tally {
    let n = game.n();
    let mut tally = Tally::new(n);
    if config.exhaustive {
        for mask in start..end {
            observe(game, kind, Coalition::from_mask(mask), &mut tally);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_word_pos(2 * u128::from(start));
        let full = full_mask(n);
        for _ in start..end {
            observe(game, kind, Coalition::from_mask(rng.next_u64() & full), &mut tally);
        }
    }
    tally
}

fn run(game: &GameOracle, kind: IndexKind, config: &SamplingConfig) -> Result<Tally> {
    if !matches!(
        kind,
        IndexKind::Johnston | IndexKind::DeeganPackel | IndexKind::HollerPackel | IndexKind::Responsibility
    ) {
        return Err(Error::InvalidArgument(format!("no sampling estimator for the {kind} index")));
    }
    if config.m == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    if config.exhaustive && config.m != 1u64 << game.n() {
        return Err(Error::InvalidArgument(format!(
            "exhaustive mode visits 2^{} coalitions, not {}",
            game.n(),
            config.m
        )));
    }
    let chunks = config.m.div_ceil(CHUNK);
    let bounds = move |c: u64| (c * CHUNK, ((c + 1) * CHUNK).min(config.m));
    #[cfg(feature = "parallel")]
    let tally = {
        use rayon::prelude::*;
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let (a, b) = bounds(c);
                tally_range(game, kind, config, a, b)
            })
            .reduce(|| Tally::new(game.n()), Tally::merge)
    };
    #[cfg(not(feature = "parallel"))]
    let tally = (0..chunks)
        .map(|c| {
            let (a, b) = bounds(c);
            tally_range(game, kind, config, a, b)
        })
        .fold(Tally::new(game.n()), Tally::merge);
    Ok(tally)
}

fn report(kind: IndexKind, config: &SamplingConfig, tally: Tally) -> EstimateReport {
    let m = from_u64(config.m);
    let values = tally
        .counts
        .iter()
        .map(|by_k| match kind {
            IndexKind::Responsibility => by_k
                .iter()
                .position(|&c| c > 0)
                .map_or_else(Rational::zero, |k| ratio(1, k as i64)),
            IndexKind::HollerPackel => from_u64(2 * by_k.iter().sum::<u64>()) / &m,
            _ => {
                let sum = by_k
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .fold(Rational::zero(), |acc, (k, &c)| acc + from_u64(2 * c) / from_u64(k as u64));
                sum / &m
            }
        })
        .collect();
    EstimateReport {
        estimates: IndexVector {
            kind,
            scale: Scale::Raw,
            values,
        },
        config: config.clone(),
        hits: tally.counts.iter().map(|by_k| by_k.iter().sum()).collect(),
        oracle_calls: tally.oracle_calls,
    }
}

/// Estimator for any of the four sampled indices.
pub fn estimate_index(game: &GameOracle, kind: IndexKind, config: &SamplingConfig) -> Result<EstimateReport> {
    let tally = run(game, kind, config)?;
    Ok(report(kind, config, tally))
}

/// Unbiased estimate of the raw Johnston index: mean of `2 / |chi(S)|` over
/// samples where the feature is critical.
pub fn estimate_johnston(game: &GameOracle, config: &SamplingConfig) -> Result<EstimateReport> {
    estimate_index(game, IndexKind::Johnston, config)
}

/// Unbiased estimate of the raw Deegan-Packel index: mean of `2 / |S|` over
/// samples that are minimal causes containing the feature.
pub fn estimate_deegan_packel(game: &GameOracle, config: &SamplingConfig) -> Result<EstimateReport> {
    estimate_index(game, IndexKind::DeeganPackel, config)
}

/// Unbiased estimate of the raw Holler-Packel index: mean of `2` over
/// samples that are minimal causes containing the feature.
pub fn estimate_holler_packel(game: &GameOracle, config: &SamplingConfig) -> Result<EstimateReport> {
    estimate_index(game, IndexKind::HollerPackel, config)
}

/// Lower estimate of responsibility: the largest `1 / |S|` over samples in
/// which the feature is critical; zero if there is none.
pub fn estimate_responsibility(game: &GameOracle, config: &SamplingConfig) -> Result<EstimateReport> {
    estimate_index(game, IndexKind::Responsibility, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{make_dictator, make_explicit_cause_game, make_null_game, make_unanimity};
    use crate::indices::compute_index;

    fn c(v: &[usize]) -> Coalition {
        Coalition::from_indices(v.iter().map(|i| i - 1))
    }

    #[test]
    fn sample_size_examples() {
        assert_eq!(sample_size(0.05, 0.05, 10).unwrap(), 2397);
        assert_eq!(sample_size(1.0, 0.05, 10).unwrap(), 6);
        assert!(sample_size(0.0, 0.05, 10).is_err());
        assert!(sample_size(0.1, 1.0, 10).is_err());
        assert!(sample_size(0.1, 0.1, 0).is_err());
        let a = sample_size(0.1, 0.05, 10).unwrap();
        let b = sample_size(0.1, 0.05, 20).unwrap();
        assert!(b > a && b - a <= (2f64.ln() / 0.01).ceil() as u64 + 1);
    }

    #[test]
    fn sample_stream_is_counter_based() {
        let all: Vec<_> = (0..10).map(|j| sample_coalition(7, j, 12)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in all {
            assert_eq!(s.mask(), rng.next_u64() & full_mask(12));
        }
    }

    #[test]
    fn exhaustive_mode_is_exact() {
        let g = make_explicit_cause_game(5, &[c(&[1, 2]), c(&[1, 3]), c(&[1, 4]), c(&[2, 5])]).unwrap();
        let cfg = SamplingConfig::exhaustive(5).unwrap();
        for kind in [
            IndexKind::Johnston,
            IndexKind::DeeganPackel,
            IndexKind::HollerPackel,
            IndexKind::Responsibility,
        ] {
            let est = estimate_index(&g, kind, &cfg).unwrap();
            assert_eq!(est.estimates, compute_index(&g, kind, Scale::Raw).unwrap(), "{kind}");
        }
    }

    #[test]
    fn null_game_estimates_zero() {
        let g = make_null_game(4).unwrap();
        let cfg = SamplingConfig::with_samples(100, 3).unwrap();
        let est = estimate_johnston(&g, &cfg).unwrap();
        assert!(est.estimates.values.iter().all(Zero::is_zero));
        assert_eq!(est.oracle_calls, 100);
    }

    #[test]
    fn dictator_responsibility_hits_one() {
        let g = make_dictator(3, 0).unwrap();
        let cfg = SamplingConfig::with_samples(64, 11).unwrap();
        let est = estimate_responsibility(&g, &cfg).unwrap();
        let saw_singleton = (0..64).any(|j| sample_coalition(11, j, 3) == c(&[1]));
        assert_eq!(est.estimates.values[0] == ratio(1, 1), saw_singleton);
        assert!(est.estimates.values[0] <= ratio(1, 1));
    }

    #[test]
    fn estimates_do_not_depend_on_chunking() {
        let g = make_unanimity(6, c(&[1, 2, 3])).unwrap();
        let cfg = SamplingConfig::with_samples(3 * CHUNK + 17, 99).unwrap();
        let est = estimate_johnston(&g, &cfg).unwrap();
        let serial = tally_range(&g, IndexKind::Johnston, &cfg, 0, cfg.m);
        assert_eq!(est, report(IndexKind::Johnston, &cfg, serial));
    }

    #[test]
    fn unsupported_kinds_rejected() {
        let g = make_dictator(2, 0).unwrap();
        let cfg = SamplingConfig::with_samples(10, 0).unwrap();
        assert!(estimate_index(&g, IndexKind::Shapley, &cfg).is_err());
        assert!(SamplingConfig::with_samples(0, 0).is_err());
    }
}
