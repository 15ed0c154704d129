//! Quadratic spaces over the base field and decidable Grothendieck-Witt
//! and Witt class arithmetic.

pub mod class;
pub mod invariants;
pub mod space;
pub mod witt;

pub use class::{gw_equal, is_metabolic, isometric, GwClass};
pub use invariants::{gw_invariants, square_class, GwInvariants};
pub use space::{PreQuadSpace, QuadSpace, Reduction};
pub use witt::{witt_table, WittGroup, WittTable};
