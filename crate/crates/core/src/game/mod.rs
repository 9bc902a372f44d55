//! Monotone binary set functions ("simple games") over feature coalitions.

mod table;
mod transform;
mod weighted;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coalition::{Coalition, MAX_FEATURES};
use crate::error::{Error, Result};

pub use table::{TruthTable, TABLE_LIMIT};
pub use transform::{contract, permute, ContractedGame, ContractionMap, PermutedGame};
pub use weighted::WeightedVotingGame;

/// Which constructor produced an oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameKind {
    TruthTable,
    WeightedVoting,
    Unanimity,
    ExplicitMinimalCauses,
    CausalValue,
    Contracted,
    Permuted,
    /// Backed by a user-supplied function.
    External,
}

/// A monotone set function `v: 2^N -> {0,1}` with `v(empty) = 0`.
///
/// Implementations must be deterministic and safe to evaluate from several
/// threads at once.
pub trait SimpleGame: Send + Sync {
    fn n(&self) -> usize;
    fn eval(&self, s: Coalition) -> bool;
    fn kind(&self) -> GameKind;
}

/// Shared handle to any [`SimpleGame`].
#[derive(Clone)]
pub struct GameOracle(Arc<dyn SimpleGame>);

impl GameOracle {
    pub fn new<G: SimpleGame + 'static>(game: G) -> Self {
        GameOracle(Arc::new(game))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.n()
    }

    #[inline]
    pub fn eval(&self, s: Coalition) -> bool {
        debug_assert!(s.fits(self.n()), "coalition {s:?} outside 0..{}", self.n());
        self.0.eval(s)
    }

    /// `eval` as 0/1.
    #[inline]
    pub fn value(&self, s: Coalition) -> u8 {
        u8::from(self.eval(s))
    }

    pub fn kind(&self) -> GameKind {
        self.0.kind()
    }

    /// Evaluates every coalition into a truth table. Requires `n <= 24`.
    pub fn tabulate(&self) -> Result<TruthTable> {
        TruthTable::tabulate(self)
    }

    /// Exhaustively checks monotonicity and `v(empty) = 0`.
    pub fn check_simple(&self) -> Result<()> {
        let table = self.tabulate()?;
        table.validate()
    }
}

impl SimpleGame for GameOracle {
    fn n(&self) -> usize {
        self.0.n()
    }
    fn eval(&self, s: Coalition) -> bool {
        self.0.eval(s)
    }
    fn kind(&self) -> GameKind {
        self.0.kind()
    }
}

impl fmt::Debug for GameOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameOracle")
            .field("n", &self.n())
            .field("kind", &self.kind())
            .finish()
    }
}

/// Game defined by an antichain of minimal causes: `v(S) = 1` iff `S`
/// contains one of them.
#[derive(Clone, Debug)]
pub struct ExplicitCauseGame {
    n: usize,
    causes: Vec<Coalition>,
    kind: GameKind,
}

impl ExplicitCauseGame {
    pub fn causes(&self) -> &[Coalition] {
        &self.causes
    }
}

impl SimpleGame for ExplicitCauseGame {
    fn n(&self) -> usize {
        self.n
    }

    fn eval(&self, s: Coalition) -> bool {
        self.causes.iter().any(|c| c.is_subset_of(s))
    }

    fn kind(&self) -> GameKind {
        self.kind
    }
}

pub(crate) fn check_feature_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidGame("a game needs at least one feature".into()));
    }
    if n > MAX_FEATURES {
        return Err(Error::InvalidGame(format!(
            "{n} features exceeds the {MAX_FEATURES}-feature coalition width"
        )));
    }
    Ok(())
}

/// Validates that `causes` is a non-empty-member antichain over `0..n` and
/// returns it in ascending mask order without duplicates.
pub fn validate_antichain(n: usize, causes: &[Coalition]) -> Result<Vec<Coalition>> {
    let mut sorted = causes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for c in &sorted {
        if c.is_empty() {
            return Err(Error::InvalidCauseFamily("the empty set cannot be a cause".into()));
        }
        if !c.fits(n) {
            return Err(Error::InvalidCauseFamily(format!("cause {c} mentions a feature beyond {n}")));
        }
    }
    for (a, x) in sorted.iter().enumerate() {
        for y in &sorted[a + 1..] {
            if x.is_subset_of(*y) || y.is_subset_of(*x) {
                let (small, big) = if x.is_subset_of(*y) { (x, y) } else { (y, x) };
                return Err(Error::InvalidCauseFamily(format!(
                    "not an antichain: {small} is contained in {big}"
                )));
            }
        }
    }
    Ok(sorted)
}

/// Game whose minimal causes are exactly `causes`.
pub fn make_explicit_cause_game(n: usize, causes: &[Coalition]) -> Result<GameOracle> {
    check_feature_count(n)?;
    let causes = validate_antichain(n, causes)?;
    Ok(GameOracle::new(ExplicitCauseGame {
        n,
        causes,
        kind: GameKind::ExplicitMinimalCauses,
    }))
}

/// Unanimity game on `t`: only supersets of `t` win.
pub fn make_unanimity(n: usize, t: Coalition) -> Result<GameOracle> {
    check_feature_count(n)?;
    if t.is_empty() || !t.fits(n) {
        return Err(Error::InvalidGame(format!("unanimity set {t} must be a non-empty subset of 1..{n}")));
    }
    Ok(GameOracle::new(ExplicitCauseGame {
        n,
        causes: vec![t],
        kind: GameKind::Unanimity,
    }))
}

/// Dictator game: feature `i` alone decides.
pub fn make_dictator(n: usize, i: usize) -> Result<GameOracle> {
    make_unanimity(n, Coalition::singleton(i))
}

/// The game with no winning coalition.
pub fn make_null_game(n: usize) -> Result<GameOracle> {
    check_feature_count(n)?;
    Ok(GameOracle::new(ExplicitCauseGame {
        n,
        causes: Vec::new(),
        kind: GameKind::ExplicitMinimalCauses,
    }))
}

pub use table::make_truth_table;
pub use weighted::make_weighted_voting;
