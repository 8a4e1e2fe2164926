//! Sorting coins of a few unknown weight classes with a balance scale.
//!
//! The crate models hidden class assignments, a scale that answers
//! weighings, adaptive strategies, an adversary for one-coin pans, an exact
//! minimax solver over small universes, and exhaustive verification.

pub mod adversary;
pub mod counting;
pub mod dsu;
pub mod error;
pub mod exec;
pub mod model;
pub mod order;
pub mod scale;
pub mod solver;
pub mod strategies;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use model::{Answer, Assignment, Goal, OrderedPartition, Outcome, Transcript, Weighing};
pub use scale::{PanPolicy, Scale, Session, WeightModel};
pub use solver::Universe;
