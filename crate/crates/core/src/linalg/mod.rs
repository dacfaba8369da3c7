//! Matrices, subspaces and the decompositions built on them.

pub mod charpoly;
pub mod echelon;
pub mod jordan;
pub mod matrix;
pub mod regular;
pub mod subspace;

pub use charpoly::{charpoly, is_nilpotent, is_semisimple, is_unipotent, minpoly};
pub use jordan::{jordan_decomposition, nilpotent_exp, nilpotent_log, QMat};
pub use matrix::Mat;
pub use regular::regular_representation;
pub use subspace::{common_kernel, fixed_space, Subspace};
