//! Tori over a local field through their character lattices: reduction type, component
//! group, canonical resolution and the six-term sequence.

mod model;
mod resolution;
mod six_term;

pub use model::{
    check_galois_data, cocharacters, component_group, component_sequence, norm_one, norm_one_data, phi_map, reduction_pieces,
    reduction_type, unit_map, weil_restriction, ComponentGroup, ComponentSequence, NormOne, ReductionPieces,
    ReductionType, TorusModel,
};
pub use resolution::{canonical_resolution, normalize, same_group, CanonicalResolution};
pub use six_term::{six_term, SixTermReport, TorusSes};
