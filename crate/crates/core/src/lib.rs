//! Exact algorithms for finitely generated matrix groups over Q and number
//! fields: finite rank decision, Hirsch number, Pruefer rank bound and
//! finite-index tests.

pub mod abelian;
pub mod arith;
pub mod congruence;
pub mod error;
pub mod linalg;
pub mod structure;
pub mod toolkit;
pub mod unipotent;

pub use error::{Error, Unknown};
