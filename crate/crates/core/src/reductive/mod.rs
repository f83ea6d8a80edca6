//! Algebraic fundamental groups of reductive groups and their abelian Galois cohomology.
//!
//! `pi_1(G)` is presented as cocharacters of a maximal torus modulo the coroot lattice. Root
//! data are not checked against the reflection axioms; only the Galois stability of the coroot
//! set is verified.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gcoh::tate;
use crate::gmod::{coinvariants, require_free, restrict_action, FiniteMatrixGroup, GModule, QuotientGroup, SubgroupHandle};
use crate::intlat::{saturation, FgAbGroup, IntMatrix};
use crate::localfield::{coinvariant_rank, h1_procyclic, LocalResult, ResidueFieldMode};
use crate::torus::{check_galois_data, same_group};

#[derive(Clone, Debug)]
pub struct RootDatumModel {
    cochar: GModule,
    coroots: Vec<Vec<BigInt>>,
    pi1: Option<GModule>,
    inertia: SubgroupHandle,
    frobenius: Option<usize>,
}

impl RootDatumModel {
    /// `cochar` is `X_*(T)` of a maximal torus with its Galois action.
    pub fn new(
        cochar: GModule,
        coroots: Vec<Vec<BigInt>>,
        pi1: Option<GModule>,
        inertia: SubgroupHandle,
        frobenius: Option<usize>,
    ) -> Result<Self> {
        require_free(&cochar)?;
        check_galois_data(cochar.group(), &inertia, frobenius)?;
        let n = cochar.rank();
        if let Some(c) = coroots.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch(format!("coroot of length {} in a lattice of rank {n}", c.len())));
        }
        let set: HashSet<&Vec<BigInt>> = coroots.iter().collect();
        for &g in cochar.group().generators() {
            for c in &coroots {
                if !set.contains(&cochar.action(g).mul_vec(c)) {
                    return Err(Error::CorootsNotStable);
                }
            }
        }
        if let Some(p) = &pi1 {
            if !same_group(p.group(), cochar.group()) {
                return Err(Error::MismatchedGaloisData("pi1 is given over a different group".into()));
            }
        }
        Ok(RootDatumModel { cochar, coroots, pi1, inertia, frobenius })
    }

    /// Split datum over the trivial group, Frobenius included.
    pub fn split(rank: usize, coroots: Vec<Vec<i64>>) -> Result<Self> {
        let g = Arc::new(FiniteMatrixGroup::trivial(rank));
        let j = g.trivial_subgroup();
        let coroots = coroots.into_iter().map(|c| c.into_iter().map(BigInt::from).collect()).collect();
        Self::new(GModule::trivial(g, rank), coroots, None, j, Some(0))
    }

    /// `SL_n` in the basis of simple coroots.
    pub fn split_sl(n: usize) -> Result<Self> {
        let r = n.saturating_sub(1);
        let mut roots = Vec::new();
        for i in 0..r {
            for j in i..r {
                let v: Vec<i64> = (0..r).map(|k| i64::from(k >= i && k <= j)).collect();
                roots.push(v.iter().map(|x| -x).collect());
                roots.push(v);
            }
        }
        Self::split(r, roots)
    }

    /// `GL_n` with coroots `e_i - e_j`.
    pub fn split_gl(n: usize) -> Result<Self> {
        let mut roots = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut v = vec![0i64; n];
                    v[i] = 1;
                    v[j] = -1;
                    roots.push(v);
                }
            }
        }
        Self::split(n, roots)
    }

    /// `PGL_n`: `X_* = Z^n / Z(1, ..., 1)` in the basis `e_1, ..., e_{n-1}`.
    pub fn split_pgl(n: usize) -> Result<Self> {
        let r = n.saturating_sub(1);
        let image = |i: usize| -> Vec<i64> {
            if i < r {
                (0..r).map(|k| i64::from(k == i)).collect()
            } else {
                vec![-1; r]
            }
        };
        let mut roots = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    roots.push(image(i).iter().zip(image(j)).map(|(a, b)| a - b).collect());
                }
            }
        }
        Self::split(r, roots)
    }

    pub fn cochar(&self) -> &GModule {
        &self.cochar
    }

    pub fn coroots(&self) -> &[Vec<BigInt>] {
        &self.coroots
    }

    pub fn inertia(&self) -> &SubgroupHandle {
        &self.inertia
    }

    pub fn frobenius(&self) -> Option<usize> {
        self.frobenius
    }
}

/// `X_* / <coroots>`, or the module supplied directly.
pub fn pi1(rd: &RootDatumModel) -> GModule {
    if let Some(p) = &rd.pi1 {
        return p.clone();
    }
    let rel = IntMatrix::from_columns(&rd.coroots, rd.cochar.rank());
    GModule::from_parts(rd.cochar.group().clone(), rd.cochar.actions().to_vec(), rel)
}

/// `H^1(H, M) = 0` for every subgroup `H`.
pub fn is_flasque(m: &GModule) -> Result<bool> {
    require_free(m)?;
    for h in m.group().subgroups() {
        if !tate(&restrict_action(m, h), 1)?.group.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct ReductiveReport {
    pub degree: i32,
    pub pi1: GModule,
    /// `pi_1(G)_J` over `Gamma/J`.
    pub pi1_coinv: GModule,
    pub quotient: QuotientGroup,
    pub result: LocalResult,
}

fn coinvariant_data(rd: &RootDatumModel) -> Result<(GModule, GModule, QuotientGroup)> {
    let p = pi1(rd);
    let (c, q) = coinvariants(&p, &rd.inertia, true)?;
    Ok((p, c, q.expect("residual action requested")))
}

/// `M / M_tors` for a presented module.
fn torsion_free_quotient(m: &GModule) -> GModule {
    GModule::from_parts(m.group().clone(), m.actions().to_vec(), saturation(m.relations()))
}

/// `H^r_ab(K, G)` through `H^r(k, pi_1(G)_J)`.
pub fn abelian_cohomology(rd: &RootDatumModel, mode: ResidueFieldMode, r: i32) -> Result<ReductiveReport> {
    if r < 1 {
        return Err(Error::InvalidDegree(r));
    }
    let (pi1, pi1_coinv, quotient) = coinvariant_data(rd)?;
    let result = match mode {
        ResidueFieldMode::CdN(n) if n >= 2 => {
            let n = n as i32;
            if r <= n {
                return Err(Error::InvalidDegree(r));
            }
            if r == n + 1 {
                LocalResult::Symbolic(torsion_free_quotient(&pi1_coinv))
            } else {
                LocalResult::Group(FgAbGroup::trivial())
            }
        }
        _ if r >= 3 => LocalResult::Group(FgAbGroup::trivial()),
        ResidueFieldMode::GenericCdLeq1 | ResidueFieldMode::CdN(_) if r == 2 => {
            LocalResult::Symbolic(torsion_free_quotient(&pi1_coinv))
        }
        ResidueFieldMode::GenericCdLeq1 | ResidueFieldMode::CdN(_) => LocalResult::Symbolic(pi1_coinv.clone()),
        ResidueFieldMode::QuasiFinite => {
            let f = rd.frobenius.ok_or(Error::MissingFrobenius)?;
            let sigma = quotient.image[f];
            if r == 1 {
                LocalResult::Group(h1_procyclic(&pi1_coinv, sigma)?.group)
            } else {
                LocalResult::Divisible(coinvariant_rank(&pi1_coinv, sigma)?)
            }
        }
    };
    Ok(ReductiveReport { degree: r, pi1, pi1_coinv, quotient, result })
}

/// `H^1(K, G)`, with the one-step (`pi_1(G)_Gamma`) and two-step (inertia, then Frobenius)
/// routes in the quasi-finite case.
#[derive(Clone, Debug)]
pub struct ReductiveH1 {
    pub result: LocalResult,
    pub one_step: Option<FgAbGroup>,
    pub two_step: Option<FgAbGroup>,
    pub routes_agree: bool,
}

pub fn h1_reductive(rd: &RootDatumModel, mode: ResidueFieldMode) -> Result<ReductiveH1> {
    let report = abelian_cohomology(rd, mode, 1)?;
    match mode {
        ResidueFieldMode::QuasiFinite => {
            let (full, _) = coinvariants(&report.pi1, &rd.cochar.group().whole(), false)?;
            let one = full.structure().torsion();
            let LocalResult::Group(two) = &report.result else {
                return Err(Error::Inconsistent("quasi-finite degree 1 result is not a group".into()));
            };
            Ok(ReductiveH1 {
                routes_agree: &one == two,
                result: report.result.clone(),
                one_step: Some(one),
                two_step: Some(two.clone()),
            })
        }
        _ => Ok(ReductiveH1 { result: report.result, one_step: None, two_step: None, routes_agree: true }),
    }
}

#[cfg(test)]
mod tests;
