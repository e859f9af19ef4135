//! Exact computational geometry over the integer lattice.
//!
//! Everything here is exact: rationals are arbitrary precision, feasibility
//! questions are decided symbolically, and the few irrational quantities that
//! appear in counting bounds (logarithms, square roots) are reported as
//! certified rational upper bounds.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command-line
//! front end live in the companion crate `irrpoly-cli`.
//!
//! Module map:
//! * [`num`] — rational scalars plus certified upper bounds for `log2`/`sqrt`
//! * [`mat`] — dense rational matrices: determinants, Cramer solves, rank
//! * [`feas`] — exact linear feasibility (elimination and simplex backends)
//! * [`rays`] — extreme rays of pointed polyhedral cones
//! * [`polytope`] — H-polytopes, parallelepipeds, lattice enumeration,
//!   irreducible points and integer hulls
//! * [`covering`] — slab partitions of parallelepipeds, triangulations,
//!   parallelepiped covers of simplexes and polytopes
//! * [`bounds`] — closed-form count bounds and bound reports
//! * [`threshold`] — threshold functions on a finite grid: teaching sets,
//!   teaching dimension, separation certificates

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod covering;
pub mod error;
pub mod feas;
pub mod mat;
pub mod num;
pub mod polytope;
pub mod rays;
pub mod threshold;

pub use error::{Error, Result};
pub use num::Rat;
