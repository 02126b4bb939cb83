//! Finite-dimensional algebras and their right modules over an exact field.

mod algebra;
mod module;

pub use algebra::{algebra_isomorphic_via, incidence_algebra, verify_idempotent_family, FinDimAlgebra, IdempotentReport};
pub use module::{composition_factors, find_isomorphism, hom_basis, hom_dim, is_absolutely_simple, is_indecomposable, AlgebraModule};
