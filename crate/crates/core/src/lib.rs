//! Point sets in F₂ⁿ that avoid `[k,1]`-flats, built from binary linear
//! codes, hypergraphs and unions of affine subspaces, together with the
//! exhaustive checkers used to verify them.

pub mod codes;
pub mod constructions;
pub mod error;
pub mod formats;
pub mod geometry;
pub mod gf2;
pub mod spectrum;
pub mod transforms;

pub use error::{Error, Result};
