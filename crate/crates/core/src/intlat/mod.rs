//! Exact integer linear algebra.

mod abelian;
mod lattice;
mod matrix;
mod snf;
mod sparse;

pub use abelian::{cokernel_group, AbHom, FgAbGroup, Quotient, Subquotient};
pub use lattice::{
    hermite_basis, kernel_basis, lattice_contains, lattice_eq, saturation, solve_matrix, LinearSolver,
};
pub use matrix::IntMatrix;
pub use snf::{elementary_divisors, rank, smith_left, smith_normal_form, LeftSnf, Snf};
pub use sparse::{unit_vector, SparseCokernel, SparseMatrix};
