use super::model::{component_group, phi_map, TorusModel};
use super::resolution::same_group;
use crate::error::{Error, Result};
use crate::gcoh::{induced_map, tate, ShortExactSequence};
use crate::intlat::{AbHom, FgAbGroup, IntMatrix};

/// `0 -> T1 -> T2 -> T3 -> 0`, given on characters as `0 -> X*(T3) -f-> X*(T2) -g-> X*(T1) -> 0`.
#[derive(Clone, Debug)]
pub struct TorusSes {
    pub t1: TorusModel,
    pub t2: TorusModel,
    pub t3: TorusModel,
    pub f: IntMatrix,
    pub g: IntMatrix,
}

impl TorusSes {
    pub fn new(t1: TorusModel, t2: TorusModel, t3: TorusModel, f: IntMatrix, g: IntMatrix) -> Result<Self> {
        for t in [&t2, &t3] {
            if !same_group(t1.galois(), t.galois()) {
                return Err(Error::MismatchedGaloisData("Galois groups differ".into()));
            }
            if t1.inertia().elements != t.inertia().elements {
                return Err(Error::MismatchedGaloisData("inertia subgroups differ".into()));
            }
        }
        ShortExactSequence::new(
            t3.char_module().clone(),
            t2.char_module().clone(),
            t1.char_module().clone(),
            f.clone(),
            g.clone(),
        )
        .map_err(|e| match e {
            Error::NonEquivariantMap | Error::NotFreeModule => Error::NotExactInput(e.to_string()),
            e => e,
        })?;
        Ok(TorusSes { t1, t2, t3, f, g })
    }
}

/// `0 -> H^2(X*(T1))^D -> H^2(X*(T2))^D -> H^2(X*(T3))^D -> phi(T1) -> phi(T2) -> phi(T3) -> 0`.
#[derive(Clone, Debug)]
pub struct SixTermReport {
    /// `H^2(J, X*(T_i))` for `i = 1, 2, 3`.
    pub h2: [FgAbGroup; 3],
    /// `phi(T_i)` for `i = 1, 2, 3`.
    pub phi: [FgAbGroup; 3],
    pub phi_12: AbHom,
    pub phi_23: AbHom,
    /// `H^2(X*(T3)) -> H^2(X*(T2))` and `H^2(X*(T2)) -> H^2(X*(T1))`.
    pub h2_32: AbHom,
    pub h2_21: AbHom,
    /// `phi(T1) -> phi(T2) -> phi(T3) -> 0` exact.
    pub right_exact: bool,
    /// `|ker(phi(T1) -> phi(T2))| = |ker(H^2(X*(T3)) -> H^2(X*(T2)))|`, the order of the
    /// cokernel of the dual map.
    pub order_bookkeeping: bool,
    /// `H^2(X*(T3)) -> H^2(X*(T2)) -> H^2(X*(T1))` exact in the middle.
    pub h2_exact: bool,
    /// `None` when `phi(T1)` has torsion; otherwise whether `phi(T1) -> phi(T2)` is injective.
    pub torsion_free_injective: Option<bool>,
}

impl SixTermReport {
    pub fn checks_pass(&self) -> bool {
        self.right_exact && self.order_bookkeeping && self.h2_exact && self.torsion_free_injective != Some(false)
    }
}

pub fn six_term(ses: &TorusSes) -> Result<SixTermReport> {
    let ts = [&ses.t1, &ses.t2, &ses.t3];
    let mut h2 = Vec::with_capacity(3);
    let mut phi = Vec::with_capacity(3);
    for t in ts {
        h2.push(tate(&t.inertia_module(), 2)?.group);
        phi.push(component_group(t)?.structure);
    }
    let phi_12 = phi_map(&ses.t1, &ses.t2, &ses.g)?;
    let phi_23 = phi_map(&ses.t2, &ses.t3, &ses.f)?;
    let h2_32 = induced_map(&ses.t3.inertia_module(), &ses.t2.inertia_module(), &ses.f, 2)?;
    let h2_21 = induced_map(&ses.t2.inertia_module(), &ses.t1.inertia_module(), &ses.g, 2)?;
    let right_exact = phi_12.is_exact_at(&phi_23) && phi_23.is_surjective();
    let k = phi_12.kernel();
    let order_bookkeeping = k.is_finite() && k.order() == h2_32.kernel().order();
    let h2_exact = h2_32.is_exact_at(&h2_21);
    let torsion_free_injective = phi[0].is_free().then(|| phi_12.is_injective());
    Ok(SixTermReport {
        h2: [h2[0].clone(), h2[1].clone(), h2[2].clone()],
        phi: [phi[0].clone(), phi[1].clone(), phi[2].clone()],
        phi_12,
        phi_23,
        h2_32,
        h2_21,
        right_exact,
        order_bookkeeping,
        h2_exact,
        torsion_free_injective,
    })
}
