//! Computation with finitely presented Coxeter groups.
//!
//! This crate is `no_std` (it needs `alloc`). It provides:
//!
//! - [`CoxeterSystem`] and [`Word`]: presentations, words over the standard
//!   generators, and the shorthand group grammar (`universal:<n>`,
//!   `single:<n>:<k>`, `triangle:<p>:<q>:<r>`).
//! - [`rewriting`]: the nil-move / braid-move calculus. Identity testing,
//!   reduction to an S-reduced expression, braid orbits, canonical forms and
//!   minimal braid-move counts.
//! - [`geom`]: the geometric representation, used as an independent identity
//!   oracle. Exact over `Z[√2, √3]` for labels in `{2, 3, 4, 6, ∞}`, floating
//!   point otherwise.
//! - [`reflength`]: reflection length via minimal deletion sets, reflection
//!   factorizations, the universal-group length, lower bounds from braid-move
//!   counts, and twisted palindromes.
//! - [`formulas`]: closed-form bounds for powers of Coxeter elements.
//!
//! Generator indices are 0-based inside the crate and 1-based in every textual
//! form (`Display`, parsing).
//!
//! ```
//! use coxlen_core::{rewriting, reflength, CoxeterSystem, SearchLimits, Word};
//!
//! let sys: CoxeterSystem = "triangle:3:3:3".parse().unwrap();
//! let w = Word::coxeter_power(&sys, 4, 2).unwrap();
//! let limits = SearchLimits::default();
//! assert!(rewriting::is_reduced(&w, &sys, &limits).unwrap());
//! let lr = reflength::reflection_length(&w, &sys, &limits).unwrap();
//! assert_eq!(lr.length, 2);
//! ```
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod formulas;
pub mod geom;
mod limits;
pub mod reflength;
pub mod rewriting;
mod rng;
mod system;
mod word;

pub use error::{Error, Result};
pub use limits::SearchLimits;
pub use rng::Lcg64;
pub use system::{CoxeterSystem, GroupSpec, Label};
pub use word::Word;
