//! Characters, isotypic decompositions, genericity, the generic-element
//! procedure, and verification of the isomorphisms with induced modules.

mod character;
mod decompose;
mod module;
mod morphism;
mod procedure;

pub use character::{irreducible_character, mn_character, multiplicity_in, specht_dimension};
pub use decompose::{
    block_stabilizer, multiplicities, seed_space, young_projector_apply, Decomposition, DecompositionReport,
    GenericityReport, IsotypicBlock, ShapeGenericity, ShapeReport,
};
pub use module::SpringerModule;
pub use morphism::{
    character_of_submodule, verify_group_ring_model, verify_morphism, verify_presentation, MorphismReport,
    MorphismTarget, PresentationReport, ResidueComparison,
};
pub use procedure::{
    construct_generic, construct_generic_with_order, independent_polys, two_row_sign_law, two_row_unique_ssyt,
    two_rows_generic, two_rows_report, GenericElement, ShapeChoice, TwoRowReport,
};
