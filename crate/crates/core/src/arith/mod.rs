//! Exact scalar arithmetic: Q, number fields, finite fields, and the
//! polynomial machinery they rest on.

pub mod field;
pub mod finfield;
pub mod lattice;
pub mod modp;
pub mod nffactor;
pub mod numfield;
pub mod poly;
pub mod primes;
pub mod zpoly;

pub use field::{int, rat, Field, Rationals};
pub use finfield::{FfElem, FiniteField};
pub use numfield::{NfElem, NumberField};
pub use poly::Poly;
