use std::sync::Arc;

use super::model::{component_group, norm_one_data, phi_map, reduction_type, ReductionType, TorusModel};
use crate::error::{Error, Result};
use crate::gcoh::{tate, ShortExactSequence};
use crate::gmod::{close_group, dual_module, invariants, quotient_by_saturated, submodule, FiniteMatrixGroup};
use crate::intlat::{kernel_basis, AbHom, FgAbGroup, IntMatrix, LinearSolver};

/// The torus over the image of `Gamma` in `Aut(X*)`, with the images of `J` and Frobenius.
pub fn normalize(t: &TorusModel) -> Result<TorusModel> {
    let g = t.galois();
    let m = t.char_module();
    let gens: Vec<(String, IntMatrix)> = g
        .generators()
        .iter()
        .zip(g.generator_names())
        .map(|(&x, name)| (name.clone(), m.action(x).clone()))
        .collect();
    let image = Arc::new(close_group(t.rank(), &gens, g.order())?);
    let map = |x: usize| image.index_of(m.action(x)).expect("action lies in the image group");
    let j: Vec<usize> = t.inertia().elements.iter().map(|&x| map(x)).collect();
    let inertia = image.subgroup_generated(&j);
    TorusModel::tautological(image.clone(), inertia, t.frobenius().map(map))
}

#[derive(Clone, Debug)]
pub struct CanonicalResolution {
    /// `T` over the image of its Galois group.
    pub normalized: TorusModel,
    pub p: TorusModel,
    pub q: TorusModel,
    /// `X*(T) -> X*(Q)`
    pub char_u: IntMatrix,
    /// `X*(Q) -> X*(P)`
    pub char_v: IntMatrix,
    /// Inclusion of `X*(Q)` in `Z^n[Gamma]`.
    pub q_inclusion: IntMatrix,
    pub phi_p: FgAbGroup,
    pub phi_q: FgAbGroup,
    pub phi_t: FgAbGroup,
    /// `phi(P) -> phi(Q)`
    pub phi_pq: AbHom,
    /// `phi(Q) -> phi(T)`
    pub phi_qt: AbHom,
    pub character_sequence_exact: bool,
    pub p_multiplicative: bool,
    pub h1_q_vanishes: bool,
    pub phi_sequence_exact: bool,
    /// `0 -> X_*(P) -> X_*(Q)_J -> X_*(T)_J -> 0`, with `X_*(P)_J = X_*(P)`.
    pub coinvariant_sequence_exact: bool,
    /// `phi(T)` computed directly (on the original and the normalized data) equals
    /// `coker(phi(P) -> phi(Q))`.
    pub matches_component_group: bool,
    /// `X_*(Q) -> X_*(T)` is `Gamma`-equivariant, so the induced isomorphism
    /// `coker(phi(P) -> phi(Q)) -> phi(T)` respects the residual action.
    pub intertwiner_equivariant: bool,
}

impl CanonicalResolution {
    pub fn checks_pass(&self) -> bool {
        self.character_sequence_exact
            && self.p_multiplicative
            && self.h1_q_vanishes
            && self.phi_sequence_exact
            && self.coinvariant_sequence_exact
            && self.matches_component_group
            && self.intertwiner_equivariant
    }
}

/// `0 -> P -> Q -> T -> 0` with `X*(P) = X*(R^(1))^J` and `X*(Q)` the preimage of
/// `X*(R^(1))^J` in `Z^n[Gamma]`.
pub fn canonical_resolution(t: &TorusModel) -> Result<CanonicalResolution> {
    let tn = normalize(t)?;
    let j = tn.inertia().clone();
    let no = norm_one_data(&tn)?;
    let r1 = no.torus.char_module();
    let pinv = invariants(r1, &j)?;
    let (_, to_coinv) = quotient_by_saturated(r1, &pinv.inclusion)?;
    let big = no.restriction.char_module();
    let q_basis = kernel_basis(&(&to_coinv * &no.projection));
    let qsub = submodule(big, &q_basis)?;
    let q_inclusion = qsub.inclusion;
    let char_u = LinearSolver::new(&q_inclusion)
        .solve_matrix(&no.unit)
        .ok_or_else(|| Error::Inconsistent("unit map does not land in X*(Q)".into()))?;
    let char_v = LinearSolver::new(&pinv.inclusion)
        .solve_matrix(&(&no.projection * &q_inclusion))
        .ok_or_else(|| Error::Inconsistent("X*(Q) does not map into X*(P)".into()))?;
    let p = tn.with_module(pinv.module)?;
    let q = tn.with_module(qsub.module)?;
    let character_sequence_exact = ShortExactSequence::new(
        tn.char_module().clone(),
        q.char_module().clone(),
        p.char_module().clone(),
        char_u.clone(),
        char_v.clone(),
    )
    .is_ok();
    let p_multiplicative = reduction_type(&p)? == ReductionType::Multiplicative;
    let h1_q_vanishes = tate(&q.inertia_module(), 1)?.group.is_trivial();
    let phi_pq = phi_map(&p, &q, &char_v)?;
    let phi_qt = phi_map(&q, &tn, &char_u)?;
    let phi_sequence_exact = phi_pq.is_injective() && phi_pq.is_exact_at(&phi_qt) && phi_qt.is_surjective();
    let phi_p = phi_pq.source();
    let coinvariant_sequence_exact = phi_sequence_exact && phi_p == FgAbGroup::free(p.rank());
    let resolved = phi_pq.cokernel();
    let matches_component_group =
        component_group(t)?.structure == resolved && component_group(&tn)?.structure == resolved;
    let intertwiner_equivariant =
        dual_module(q.char_module()).is_equivariant_map(&dual_module(tn.char_module()), &char_u.transpose());
    Ok(CanonicalResolution {
        phi_q: phi_pq.target(),
        phi_t: phi_qt.target(),
        phi_p,
        normalized: tn,
        p,
        q,
        char_u,
        char_v,
        q_inclusion,
        phi_pq,
        phi_qt,
        character_sequence_exact,
        p_multiplicative,
        h1_q_vanishes,
        phi_sequence_exact,
        coinvariant_sequence_exact,
        matches_component_group,
        intertwiner_equivariant,
    })
}

/// Are two groups the same set of matrices in the same order?
pub fn same_group(a: &Arc<FiniteMatrixGroup>, b: &Arc<FiniteMatrixGroup>) -> bool {
    Arc::ptr_eq(a, b) || a.elements() == b.elements()
}
