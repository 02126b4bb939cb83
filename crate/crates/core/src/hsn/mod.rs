//! Operator algebra on `ℂS_n` generated by position swaps and decreasing sorts.

mod basis;
mod hecke0;
mod modules;
mod operators;

pub use basis::{pair_count_oracle, sandwich_space, HsnAlgebra};
pub use operators::{
    affine_relation_check, check_relations, elementary_operator, functional, pi_step, pibar_step, OpKind, PermBasis,
    RelationReport,
};
pub use modules::{
    antisymmetric_space, boolean_incidence, cartan_hsn, idempotent_membership, idempotent_p_i, idempotents,
    induced_sign_character, module_p_i, morita_check, orbit_span, projective_dimensions, projective_simple_pairing,
    restricted_trace, sandwich_dim, simple_quotient, simple_s_i, symmetric_group_character_check, v_matrix, vector_v,
    vector_v_composition, MoritaReport, ProjectiveHs,
};
pub use hecke0::{
    hecke0_algebra, hecke0_embedding, hecke0_product, hecke0_projective_check, hecke0_projective_dim, hecke0_simple,
    hecke0_simple_restriction_check, RestrictionCheck,
};
