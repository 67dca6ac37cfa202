//! The symmetric group, its group ring, and the subgroups H_μ(l).

mod algebra;
mod perm;
mod subgroup;

pub use algebra::{GModule, GroupAlgebraElement, RegularModule};
pub use perm::Permutation;
pub use subgroup::{
    a_cycle, a_mu, c_mu, class_size, coset_reps, cyclic_subgroup, induced_character, semidirect_h, symmetrizer,
    young_subgroup, young_symmetrizer, z_mu, ClassFunction, SubgroupEnum, SubgroupKind, ZetaCharacter,
    SUBGROUP_DEGREE_LIMIT,
};
