//! Holonomic rank jumps of A-hypergeometric systems from ranking lattices,
//! computed with exact arithmetic.

pub mod cone_geometry;
pub mod error;
pub mod exact_lattice;
pub mod isom_classes;
pub mod rank_jump;
pub mod ranking;
pub mod semigroup_modules;

pub use error::{Error, Result};
