//! Exact value-set statistics for sparse polynomials over prime fields,
//! the pigeonhole exponent reduction that shrinks their degrees on units,
//! exceptional-factor scans, lower-bound formula evaluators, and the
//! extremal constructions that attain them.
//!
//! Everything here is pure computation on immutable values (`no_std` +
//! `alloc`); IO, parsing and orchestration live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod bounds;
pub mod constructions;
pub mod factors;
pub mod field;
pub mod poly;
pub mod reduction;

pub use field::Prime;
pub use poly::{Domain, LaurentPoly, SparsePoly, ValueSetStats};
