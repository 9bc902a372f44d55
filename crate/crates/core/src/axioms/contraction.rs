//! Minimal causes of a contracted game, predicted from the original game.
//!
//! Merging `T` into `[T]`, the sets `(S \ T) u {[T]}` for the causes `S`
//! meeting `T` are winning in `v_[T]`, but they need not all be minimal:
//! removing `T` can make one of them contain another. The causes of `v_[T]`
//! that contain `[T]` are exactly the minimal members of that list (a cause
//! avoiding `T` cannot sit inside `S \ T`, as the causes form an antichain).

use crate::causes::{minimal_causes, minimal_elements};
use crate::coalition::Coalition;
use crate::error::Result;
use crate::game::{contract, GameOracle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionCheck {
    pub set: Coalition,
    /// Enumerated causes of `v_[T]` containing `[T]`, in contracted indices.
    pub enumerated: Vec<Coalition>,
    /// `{(S \ T) u {[T]} : S in M_i(v), i in T}` without further filtering.
    pub literal: Vec<Coalition>,
    /// Members of `literal` that remain minimal alongside the causes avoiding `T`.
    pub predicted: Vec<Coalition>,
}

impl ContractionCheck {
    /// The literal list coincides with the enumeration.
    pub fn literal_holds(&self) -> bool {
        self.literal == self.enumerated
    }

    /// The filtered prediction coincides with the enumeration.
    pub fn predicted_holds(&self) -> bool {
        self.predicted == self.enumerated
    }
}

pub fn check_contraction_formula(game: &GameOracle, t: Coalition) -> Result<ContractionCheck> {
    let (contracted, map) = contract(game, t)?;
    let original = minimal_causes(game)?;
    let merged = Coalition::singleton(map.merged);
    let to_new = |s: Coalition| -> Coalition {
        s.difference(t)
            .iter()
            .map(|i| map.new_index(i).expect("features outside T survive"))
            .collect()
    };
    let mut literal: Vec<Coalition> = original
        .causes()
        .iter()
        .filter(|s| !s.intersection(t).is_empty())
        .map(|s| to_new(*s).union(merged))
        .collect();
    literal.sort_unstable();
    literal.dedup();
    let avoiding: Vec<Coalition> = original
        .causes()
        .iter()
        .filter(|s| s.intersection(t).is_empty())
        .map(|s| to_new(*s))
        .collect();
    let mut pool = literal.clone();
    pool.extend(avoiding);
    let predicted: Vec<Coalition> = minimal_elements(&pool).into_iter().filter(|s| s.contains(map.merged)).collect();
    let enumerated: Vec<Coalition> = minimal_causes(&contracted)?
        .causes()
        .iter()
        .copied()
        .filter(|s| s.contains(map.merged))
        .collect();
    Ok(ContractionCheck {
        set: t,
        enumerated,
        literal,
        predicted,
    })
}
