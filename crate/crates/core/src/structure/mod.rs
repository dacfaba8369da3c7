//! Block structure of solvable-by-finite groups.

pub mod algebra;
pub mod crp;
pub mod sf;
pub mod ua;

pub use algebra::{invariant_algebra, is_nilpotent_algebra, InvariantAlgebra};
pub use crp::{certify_completely_reducible, completely_reducible_part, stable_fixed_space, unipotent_radical_normal_generators, CrPart};
pub use sf::{is_finite_rank, is_solvable_by_finite, Outcome, Route, SfOptions, SfVerdict};
pub use ua::{is_ua_normal_closure, BlockForm, BlockSummary};
