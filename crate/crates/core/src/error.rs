//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A lattice claimed to be a sublattice is not contained in the other one.
    #[error("lattice is not contained in the claimed superlattice")]
    NotASublattice,
    /// The bounding functional is not strictly positive on the given column.
    #[error("bound functional is not strictly positive on column {0}")]
    InvalidBoundFunctional(usize),
    /// The cone spanned by the columns contains a line (or a zero column).
    #[error("the cone spanned by the columns is not pointed")]
    NotPointed,
    /// The columns do not generate the full integer lattice.
    #[error("the columns do not generate the full integer lattice")]
    NotFullLattice,
    /// The face passed where a facet was required has the wrong dimension.
    #[error("face {0:?} is not a facet")]
    NotAFacet(Vec<usize>),
    /// A structural identity that must hold failed at runtime.
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    /// Inputs of incompatible shapes were combined.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// The generators of a monoid module are not closed under addition.
    #[error("generators do not define an NA-monoid: {0}")]
    NotAMonoid(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
