//! Exact integer and rational linear algebra over arbitrary-precision numbers.

mod lattice;
mod matrix;
mod normal_form;
mod solve;

pub use lattice::{
    coset_intersection, lattice_from_generators, lattice_index, quotient_representatives, saturate,
    AffineCoset, LatticeBasis, LatticeIndex,
};
pub use matrix::{
    add_vec, dot, dot_rat, int_vec, primitive_integer_vector, rank_of_vectors, rat_to_int_vec, sign,
    sparse_rank,
    sub_vec, to_rat_vec, Int, IntMatrix, Rat,
};
pub(crate) use matrix::{rational_kernel, rref};
pub use normal_form::{
    hermite_normal_form, integer_kernel, is_column_hnf, smith_diagonal, smith_normal_form, solve_integer,
};
pub(crate) use normal_form::smith_full;
pub use solve::solve_nonneg_integer;
