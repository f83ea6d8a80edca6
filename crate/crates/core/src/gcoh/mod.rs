//! Tate cohomology of finite groups with coefficients in lattices and presented modules.

mod complex;
mod lemma21;
mod maps;
mod tate;

pub use complex::BarComplex;
pub use lemma21::{
    dual_coinvariants, dual_of_finite_action, h1_dual_module, h1_with_residual_action, lemma21_sequence,
    H1WithAction, Lemma21,
};
pub use maps::{
    connecting_map, connecting_map_on, induced_map, induced_map_on, long_exact_sequence, LongExactReport,
    ShortExactSequence,
};
pub use tate::{
    apply_blockwise, apply_differential, cochain_dim, tate, tate_via_complex, tate_with_cap, tuple_count,
    CohomologyResult, DEFAULT_DEGREE_CAP,
};

#[cfg(test)]
mod tests;
