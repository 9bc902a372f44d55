use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::rational::Rational;

use super::{check_feature_count, GameKind, GameOracle, SimpleGame};

/// Threshold game `v(S) = 1{sum_{i in S} w_i >= q}`, compared exactly.
///
/// Weights and threshold are scaled by the lcm of their denominators so
/// evaluation is an integer comparison; the scaled values use `i128` when
/// they fit and big integers otherwise.
#[derive(Clone, Debug)]
pub struct WeightedVotingGame {
    weights: Vec<Rational>,
    threshold: Rational,
    scaled: Scaled,
}

#[derive(Clone, Debug)]
enum Scaled {
    Small { weights: Vec<i128>, threshold: i128 },
    Big { weights: Vec<BigInt>, threshold: BigInt },
}

impl WeightedVotingGame {
    pub fn new(weights: Vec<Rational>, threshold: Rational) -> Result<Self> {
        check_feature_count(weights.len())?;
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(Error::InvalidGame(format!("weight of feature {} is negative ({w})", i + 1)));
        }
        if !threshold.is_positive() {
            return Err(Error::InvalidGame(format!(
                "threshold {threshold} must be positive so the empty coalition loses"
            )));
        }
        let lcm = weights
            .iter()
            .chain(std::iter::once(&threshold))
            .fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
        let scale = |r: &Rational| (r * Rational::from_integer(lcm.clone())).to_integer();
        let big_weights: Vec<BigInt> = weights.iter().map(scale).collect();
        let big_threshold = scale(&threshold);
        let total: BigInt = big_weights.iter().sum::<BigInt>() + &big_threshold;
        let scaled = match total.to_i128() {
            Some(_) => Scaled::Small {
                weights: big_weights.iter().map(|w| w.to_i128().unwrap()).collect(),
                threshold: big_threshold.to_i128().unwrap(),
            },
            None => Scaled::Big {
                weights: big_weights,
                threshold: big_threshold,
            },
        };
        Ok(WeightedVotingGame {
            weights,
            threshold,
            scaled,
        })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    /// Exact weight of a coalition.
    pub fn weight_of(&self, s: Coalition) -> Rational {
        s.iter().fold(Rational::zero(), |acc, i| acc + &self.weights[i])
    }
}

impl SimpleGame for WeightedVotingGame {
    fn n(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    fn eval(&self, s: Coalition) -> bool {
        match &self.scaled {
            Scaled::Small { weights, threshold } => s.iter().map(|i| weights[i]).sum::<i128>() >= *threshold,
            Scaled::Big { weights, threshold } => &s.iter().map(|i| &weights[i]).sum::<BigInt>() >= threshold,
        }
    }

    fn kind(&self) -> GameKind {
        GameKind::WeightedVoting
    }
}

/// Weighted voting game oracle. Rejects negative weights and a non-positive
/// threshold (the latter would make the empty coalition win).
pub fn make_weighted_voting(weights: Vec<Rational>, threshold: Rational) -> Result<GameOracle> {
    Ok(GameOracle::new(WeightedVotingGame::new(weights, threshold)?))
}
