//! Exact scalars and sparse linear algebra: rank, kernels, spans with exact
//! coordinates, intersections and quotients.

mod field;
mod sparse;
mod subspace;

pub use field::{Field, Fp, F30, F31, F32, Q};
pub use sparse::{linear_combination, SparseMatrix, SparseMatrixJson, SparseVec};
pub use subspace::{
    combine, inverse, kernel_basis, kernel_from_rref, left_kernel_basis, quotient_space, rank, solve_left, Membership,
    Quotient, Subspace,
};
