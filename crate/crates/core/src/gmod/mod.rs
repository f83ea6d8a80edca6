//! Finite matrix groups and modules over them.

mod group;
mod module;

pub use group::{close_group, FiniteMatrixGroup, QuotientGroup, SubgroupHandle};
pub use module::{
    augmentation_generators, augmentation_generators_all, block_diagonal, change_basis, coinvariant_map, coinvariants,
    descend, dual_module,
    dual_module_with_basis, induced_module, intersect, invariants, norm_data, norm_matrix, quotient_by_saturated,
    require_free, restrict_action, same_lattice, submodule, GModule, NormData, Submodule,
};

#[cfg(test)]
mod tests;
