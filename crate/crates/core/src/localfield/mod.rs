//! Galois cohomology of tori over a henselian discretely valued field whose residue field has
//! cohomological dimension at most one, computed on the residue field side.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcoh::h1_dual_module;
use crate::gmod::{coinvariants, GModule};
use crate::intlat::{FgAbGroup, IntMatrix, Quotient};
use crate::torus::{component_group, component_sequence, reduction_type, ReductionType, TorusModel};

/// What is known about the residue field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResidueFieldMode {
    /// Perfect with absolute Galois group `Z^`, topologically generated by the Frobenius of
    /// the model.
    QuasiFinite,
    /// Only `cd(k) <= 1` is known.
    GenericCdLeq1,
    /// `cd(k) <= n`.
    CdN(u32),
}

#[derive(Clone, Debug)]
pub enum LocalResult {
    Group(FgAbGroup),
    /// `(Q/Z)^rank`
    Divisible(usize),
    /// A module over `Gamma/J` whose cohomology over `k` is the answer.
    Symbolic(GModule),
}

impl LocalResult {
    pub fn is_zero(&self) -> bool {
        match self {
            LocalResult::Group(g) => g.is_trivial(),
            LocalResult::Divisible(r) => *r == 0,
            LocalResult::Symbolic(m) => m.structure().is_trivial(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalCohomologyReport {
    pub degree: i32,
    pub result: LocalResult,
}

/// Torsion of `M / ((sigma - 1) M + R)` with representatives of its generators.
#[derive(Clone, Debug)]
pub struct ProcyclicH1 {
    pub group: FgAbGroup,
    pub representatives: Vec<Vec<BigInt>>,
}

/// `H^1` of the procyclic group topologically generated by `sigma`, acting through the
/// module's (cyclic) group.
pub fn h1_procyclic(m: &GModule, sigma: usize) -> Result<ProcyclicH1> {
    let g = m.group();
    if sigma >= g.order() || g.closure(&[sigma]).len() != g.order() {
        return Err(Error::NonCyclicAction);
    }
    let n = m.rank();
    let rel = m.relations().hstack(&(m.action(sigma) - &IntMatrix::identity(n)));
    let q = Quotient::new(&rel);
    let group = q.group().torsion();
    let k = group.invariant_factors.len();
    let representatives = q.generators().into_iter().take(k).collect();
    Ok(ProcyclicH1 { group, representatives })
}

/// `phi(T) = (X_*)_J` over `Gamma/J` with the Frobenius image.
fn residual_frobenius(t: &TorusModel) -> Result<(GModule, usize)> {
    let f = t.frobenius().ok_or(Error::MissingFrobenius)?;
    let c = component_group(t)?;
    let sigma = c.quotient.image[f];
    Ok((c.module, sigma))
}

/// Rank of the `sigma`-coinvariants of a module over a cyclic group generated by `sigma`.
pub(crate) fn coinvariant_rank(m: &GModule, sigma: usize) -> Result<usize> {
    let g = m.group();
    if g.closure(&[sigma]).len() != g.order() {
        return Err(Error::NonCyclicAction);
    }
    let (c, _) = coinvariants(m, &g.whole(), false)?;
    Ok(c.structure().rank)
}

/// `H^r(K, T)` through `H^r(k, X_*(T)_J)`.
pub fn local_cohomology(t: &TorusModel, mode: ResidueFieldMode, r: i32) -> Result<LocalCohomologyReport> {
    if r < 1 {
        return Err(Error::InvalidDegree(r));
    }
    let result = match mode {
        ResidueFieldMode::CdN(n) if n >= 2 => {
            let n = n as i32;
            if r <= n {
                return Err(Error::InvalidDegree(r));
            }
            if r == n + 1 {
                LocalResult::Symbolic(component_sequence(t)?.free_target)
            } else {
                LocalResult::Group(FgAbGroup::trivial())
            }
        }
        _ if r >= 3 => LocalResult::Group(FgAbGroup::trivial()),
        // H^2(k, -) kills the finite part, leaving (X*^J)^v.
        ResidueFieldMode::GenericCdLeq1 | ResidueFieldMode::CdN(_) if r == 2 => {
            LocalResult::Symbolic(component_sequence(t)?.free_target)
        }
        ResidueFieldMode::GenericCdLeq1 | ResidueFieldMode::CdN(_) => {
            LocalResult::Symbolic(component_group(t)?.module)
        }
        ResidueFieldMode::QuasiFinite => {
            let (phi, sigma) = residual_frobenius(t)?;
            if r == 1 {
                LocalResult::Group(h1_procyclic(&phi, sigma)?.group)
            } else {
                let free = component_sequence(t)?.free_target;
                LocalResult::Divisible(coinvariant_rank(&free, sigma)?)
            }
        }
    };
    Ok(LocalCohomologyReport { degree: r, result })
}

/// The two routes to `H^r(K, T)` for unipotent `T`.
#[derive(Clone, Debug)]
pub struct UnipotentCheck {
    /// Through `phi(T)`.
    pub via_components: LocalResult,
    /// Through `H^1(J, X*)^D`.
    pub via_h1_dual: LocalResult,
    pub degree_one_agrees: bool,
    pub degree_two_vanishes: bool,
}

impl UnipotentCheck {
    pub fn passed(&self) -> bool {
        self.degree_one_agrees && self.degree_two_vanishes
    }
}

pub fn unipotent_cross_check(t: &TorusModel, mode: ResidueFieldMode) -> Result<UnipotentCheck> {
    if reduction_type(t)? != ReductionType::Unipotent {
        return Err(Error::NotUnipotent);
    }
    let dual = h1_dual_module(t.char_module(), t.inertia())?;
    let via_components = local_cohomology(t, mode, 1)?.result;
    let via_h1_dual = match mode {
        ResidueFieldMode::QuasiFinite => {
            let f = t.frobenius().ok_or(Error::MissingFrobenius)?;
            let q = t.residual_group()?;
            LocalResult::Group(h1_procyclic(&dual, q.image[f])?.group)
        }
        _ => LocalResult::Symbolic(dual),
    };
    let degree_one_agrees = match (&via_components, &via_h1_dual) {
        (LocalResult::Group(a), LocalResult::Group(b)) => a == b,
        (LocalResult::Symbolic(a), LocalResult::Symbolic(b)) => a.structure() == b.structure(),
        _ => false,
    };
    let degree_two_vanishes = match mode {
        ResidueFieldMode::CdN(n) if n >= 2 => true,
        _ => local_cohomology(t, mode, 2)?.result.is_zero(),
    };
    Ok(UnipotentCheck { via_components, via_h1_dual, degree_one_agrees, degree_two_vanishes })
}
