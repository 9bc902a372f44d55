//! Causal explanations for binary classifier decisions.
//!
//! A point of interest, a constraint set of feasible alternatives and a
//! causal model (or a black-box classifier) induce a monotone binary set
//! function over feature coalitions. Its minimal and quasi-minimal causes
//! are aggregated into per-feature power indices: responsibility,
//! Holler-Packel, Deegan-Packel, Johnston, Shapley-Shubik and Banzhaf.

pub mod axioms;
pub mod causal;
pub mod causes;
pub mod coalition;
pub mod error;
pub mod game;
pub mod indices;
pub mod io;
pub mod rational;
pub mod sampling;

pub use coalition::Coalition;
pub use error::{Error, Result};
pub use causes::{CauseFamily, FamilyKind};
pub use game::{GameKind, GameOracle, SimpleGame};
pub use indices::{IndexKind, IndexVector, Scale};
