use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcoh::{lemma21_sequence, tate, ShortExactSequence};
use crate::gmod::{
    coinvariants, descend, dual_module, induced_module, invariants, norm_data, quotient_by_saturated, require_free,
    restrict_action, FiniteMatrixGroup, GModule, QuotientGroup, SubgroupHandle,
};
use crate::intlat::{AbHom, FgAbGroup, IntMatrix, LinearSolver};

/// A torus given by its character lattice `X*` with the action of `Gal(L/K)`, the inertia
/// subgroup and optionally a Frobenius element.
#[derive(Clone, Debug)]
pub struct TorusModel {
    char_module: GModule,
    inertia: SubgroupHandle,
    frobenius: Option<usize>,
}

impl TorusModel {
    pub fn new(char_module: GModule, inertia: SubgroupHandle, frobenius: Option<usize>) -> Result<Self> {
        require_free(&char_module)?;
        check_galois_data(char_module.group(), &inertia, frobenius)?;
        Ok(TorusModel { char_module, inertia, frobenius })
    }

    /// `X* = Z^n` with the matrix group acting through its own matrices.
    pub fn tautological(galois: Arc<FiniteMatrixGroup>, inertia: SubgroupHandle, frobenius: Option<usize>) -> Result<Self> {
        Self::new(GModule::tautological(galois), inertia, frobenius)
    }

    /// Split torus of rank `n`.
    pub fn split(n: usize) -> Self {
        let g = Arc::new(FiniteMatrixGroup::trivial(n));
        let j = g.trivial_subgroup();
        TorusModel { char_module: GModule::trivial(g, n), inertia: j, frobenius: Some(0) }
    }

    pub fn char_module(&self) -> &GModule {
        &self.char_module
    }

    pub fn galois(&self) -> &Arc<FiniteMatrixGroup> {
        self.char_module.group()
    }

    pub fn inertia(&self) -> &SubgroupHandle {
        &self.inertia
    }

    pub fn frobenius(&self) -> Option<usize> {
        self.frobenius
    }

    pub fn rank(&self) -> usize {
        self.char_module.rank()
    }

    /// Same Galois data, different character module.
    pub fn with_module(&self, m: GModule) -> Result<Self> {
        TorusModel::new(m, self.inertia.clone(), self.frobenius)
    }

    /// `X*` as a module over the inertia group alone.
    pub fn inertia_module(&self) -> GModule {
        restrict_action(&self.char_module, &self.inertia)
    }

    pub fn residual_group(&self) -> Result<QuotientGroup> {
        self.galois().quotient(&self.inertia)
    }
}

/// `J` normal in `Gamma`, and a Frobenius (when given) generating `Gamma/J`.
pub fn check_galois_data(g: &FiniteMatrixGroup, inertia: &SubgroupHandle, frobenius: Option<usize>) -> Result<()> {
    if !inertia.is_normal {
        return Err(Error::NonNormalSubgroupForResidualAction);
    }
    if let Some(f) = frobenius {
        if f >= g.order() {
            return Err(Error::InvalidFrobenius);
        }
        let q = g.quotient(inertia)?;
        if q.group.closure(&[q.image[f]]).len() != q.group.order() {
            return Err(Error::InvalidFrobenius);
        }
    }
    Ok(())
}

/// `X_* = Hom(X*, Z)` with the contragredient action.
pub fn cocharacters(t: &TorusModel) -> GModule {
    dual_module(&t.char_module)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionType {
    Multiplicative,
    Unipotent,
    Mixed,
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionType::Multiplicative => "Multiplicative",
            ReductionType::Unipotent => "Unipotent",
            ReductionType::Mixed => "Mixed",
        };
        f.write_str(s)
    }
}

/// Multiplicative when inertia acts trivially (including rank 0), unipotent when `X*^J = 0`.
pub fn reduction_type(t: &TorusModel) -> Result<ReductionType> {
    if t.char_module.acts_trivially_on(&t.inertia) {
        return Ok(ReductionType::Multiplicative);
    }
    let inv = invariants(&t.char_module, &t.inertia)?;
    Ok(if inv.inclusion.cols() == 0 { ReductionType::Unipotent } else { ReductionType::Mixed })
}

/// Character modules of the four pieces, with the maps of the two character sequences
/// `0 -> X*^J -> X* -> X*/X*^J -> 0` and `0 -> _N X* -> X* -N-> N X* -> 0`.
#[derive(Clone, Debug)]
pub struct ReductionPieces {
    /// `X*(T_(m)) = N X*`
    pub mult_sub: GModule,
    /// `X*(T^(m)) = X*^J`
    pub mult_quot: GModule,
    /// `X*(T_(u)) = X* / X*^J`
    pub unip_sub: GModule,
    /// `X*(T^(u)) = _N X*`
    pub unip_quot: GModule,
    pub invariant_inclusion: IntMatrix,
    pub invariant_projection: IntMatrix,
    pub norm_kernel_inclusion: IntMatrix,
    pub norm_projection: IntMatrix,
    pub all_free: bool,
    pub invariant_sequence_exact: bool,
    pub norm_sequence_exact: bool,
}

pub fn reduction_pieces(t: &TorusModel) -> Result<ReductionPieces> {
    let m = &t.char_module;
    let inv = invariants(m, &t.inertia)?;
    let (unip_sub, invariant_projection) = quotient_by_saturated(m, &inv.inclusion)?;
    let nd = norm_data(m, &t.inertia)?;
    let norm_projection = LinearSolver::new(&nd.image.inclusion)
        .solve_matrix(&nd.norm)
        .ok_or_else(|| Error::Inconsistent("norm does not land in its image lattice".into()))?;
    let mult_quot = inv.module;
    let mult_sub = nd.image.module;
    let unip_quot = nd.kernel.module;
    let all_free = [&mult_sub, &mult_quot, &unip_sub, &unip_quot].iter().all(|x| x.is_free());
    let invariant_sequence_exact = ShortExactSequence::new(
        mult_quot.clone(),
        m.clone(),
        unip_sub.clone(),
        inv.inclusion.clone(),
        invariant_projection.clone(),
    )
    .is_ok();
    let norm_sequence_exact = ShortExactSequence::new(
        unip_quot.clone(),
        m.clone(),
        mult_sub.clone(),
        nd.kernel.inclusion.clone(),
        norm_projection.clone(),
    )
    .is_ok();
    Ok(ReductionPieces {
        mult_sub,
        mult_quot,
        unip_sub,
        unip_quot,
        invariant_inclusion: inv.inclusion,
        invariant_projection,
        norm_kernel_inclusion: nd.kernel.inclusion,
        norm_projection,
        all_free,
        invariant_sequence_exact,
        norm_sequence_exact,
    })
}

/// `phi(T) = (X_*)_J` with the action of `Gamma/J`.
#[derive(Clone, Debug)]
pub struct ComponentGroup {
    pub module: GModule,
    pub quotient: QuotientGroup,
    pub structure: FgAbGroup,
    pub torsion_part: FgAbGroup,
    pub free_rank: usize,
    /// `H^1(J, X*)`
    pub h1: FgAbGroup,
    /// `rank X*^J`
    pub invariant_rank: usize,
    pub torsion_matches_h1: bool,
    pub free_rank_matches: bool,
}

impl ComponentGroup {
    pub fn checks_pass(&self) -> bool {
        self.torsion_matches_h1 && self.free_rank_matches
    }
}

pub fn component_group(t: &TorusModel) -> Result<ComponentGroup> {
    let (module, q) = coinvariants(&cocharacters(t), &t.inertia, true)?;
    let quotient = q.expect("residual action requested");
    let structure = module.structure();
    let torsion_part = structure.torsion();
    let free_rank = structure.rank;
    let h1 = tate(&t.inertia_module(), 1)?.group;
    let invariant_rank = invariants(&t.char_module, &t.inertia)?.inclusion.cols();
    Ok(ComponentGroup {
        torsion_matches_h1: torsion_part == h1,
        free_rank_matches: free_rank == invariant_rank,
        module,
        quotient,
        structure,
        torsion_part,
        free_rank,
        h1,
        invariant_rank,
    })
}

/// `0 -> H^1(J, X*)^D -> phi(T) -q-> (X*^J)^v -> 0`.
#[derive(Clone, Debug)]
pub struct ComponentSequence {
    pub tors: FgAbGroup,
    /// `[lambda] -> (chi -> <lambda, chi>)` on `chi` in `X*^J`.
    pub q: AbHom,
    /// `(X*^J)^v` with the action of `Gamma/J`.
    pub free_target: GModule,
    pub surjective: bool,
    pub kernel_order_matches: bool,
    /// `<N lambda, chi> = |J| <lambda, chi>` on `X*^J`.
    pub norm_identity: bool,
    pub exact: bool,
}

pub fn component_sequence(t: &TorusModel) -> Result<ComponentSequence> {
    let l = lemma21_sequence(&t.inertia_module())?;
    let inv = invariants(&t.char_module, &t.inertia)?;
    let q = t.residual_group()?;
    let free_target = descend(&dual_module(&inv.module), &q);
    let kernel_order_matches = l.kernel.order() == l.h1.order();
    Ok(ComponentSequence {
        tors: l.h1,
        surjective: l.surjective,
        kernel_order_matches,
        norm_identity: l.norm_identity,
        exact: l.exact,
        q: l.q,
        free_target,
    })
}

/// `R_{L/K}(T_L)`: character module `Z^n[Gamma]`.
pub fn weil_restriction(t: &TorusModel) -> Result<TorusModel> {
    t.with_module(induced_module(t.rank(), t.galois().clone()))
}

/// `u : X* -> Z^n[Gamma]`, block `k` of `u(chi)` being `gamma_k^-1 chi`.
pub fn unit_map(t: &TorusModel) -> IntMatrix {
    let g = t.galois();
    let parts: Vec<IntMatrix> = (0..g.order()).map(|k| t.char_module.action(g.inv(k)).clone()).collect();
    IntMatrix::vstack_all(&parts, t.rank())
}

/// Norm-one torus with its character module `coker u`, together with `u`, the Weil
/// restriction and the projection `Z^n[Gamma] -> X*(R^(1))`.
#[derive(Clone, Debug)]
pub struct NormOne {
    pub torus: TorusModel,
    pub restriction: TorusModel,
    pub unit: IntMatrix,
    pub projection: IntMatrix,
}

pub fn norm_one_data(t: &TorusModel) -> Result<NormOne> {
    let restriction = weil_restriction(t)?;
    let unit = unit_map(t);
    if !t.char_module.is_equivariant_map(restriction.char_module(), &unit) {
        return Err(Error::Inconsistent("unit map is not equivariant".into()));
    }
    let (m, projection) = quotient_by_saturated(restriction.char_module(), &unit)?;
    Ok(NormOne { torus: t.with_module(m)?, restriction, unit, projection })
}

pub fn norm_one(t: &TorusModel) -> Result<TorusModel> {
    Ok(norm_one_data(t)?.torus)
}

/// Map `phi(T) -> phi(T')` induced by a map of tori `T -> T'`, given contravariantly as an
/// equivariant map `X*(T') -> X*(T)`.
pub fn phi_map(t: &TorusModel, t2: &TorusModel, char_map: &IntMatrix) -> Result<AbHom> {
    if !t2.char_module.is_equivariant_map(&t.char_module, char_map) {
        return Err(Error::NonEquivariantMap);
    }
    crate::gmod::coinvariant_map(&cocharacters(t), &cocharacters(t2), &char_map.transpose(), &t.inertia)
}
