//! Exact computation of the upsilon invariant and related concordance data
//! from finitely generated, Maslov graded, Alexander filtered chain
//! complexes over F2[U].
//!
//! The crate is split into layers:
//!
//! * [`exact`]: rational arithmetic, piecewise linear functions on [0,2],
//!   and graded matrix reduction over a valuation ring.
//! * [`cfk`]: the chain complex data model, validation, calibration and a
//!   catalog of model complexes (staircases, thin complexes, doubles).
//! * [`upsilon`]: the t-modified grading, upsilon as an exact piecewise
//!   linear function, tau, nu, genus bounds and triviality predicates.
//! * [`bordered`]: the torus algebra, type D / type A structures, box
//!   tensor products and grading reduction, used to rebuild complexes of
//!   satellites from bordered data.
//! * [`links`]: collapsed multi-component complexes and the upsilon set.
//! * [`suite`]: the self-check battery used by the CLI `verify` command.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bordered;
pub mod cfk;
pub mod exact;
pub mod links;
pub mod suite;
pub mod upsilon;
