//! Exact computational algebra over small local rings.
//!
//! The crate builds up, in order: base rings ([`rings`]), matrices and
//! canonical column echelon forms ([`linalg`]), finite-rank associative
//! algebras given by structure constants ([`algebras`]), projective points
//! and subspaces ([`projective`]), the correspondence between points of
//! projective space and rank-`(n+1)` right ideals of `M_{n+1}` together
//! with splitting machinery ([`severi_brauer`]), and parametrization of
//! plane conics with a rational point ([`conics`]). The [`json`] module
//! fixes the wire encodings used by the `brauer-kit` binary and [`selftest`]
//! hosts the acceptance suites that binary exposes.
//!
//! Everything is exact: no floating point, no probabilistic identities.
//! Witness choices (first point found, first ideal found, canonical basis)
//! follow documented total orders so results are reproducible.

pub mod algebras;
pub mod conics;
pub mod error;
pub mod json;
pub mod linalg;
pub mod projective;
pub mod rings;
pub mod selftest;
pub mod severi_brauer;

pub use error::{Error, Result};
pub use rings::{Elem, Ring};
