use num_bigint::BigInt;
use num_traits::Zero;

use super::complex::BarComplex;
use crate::error::{Error, Result};
use crate::gmod::{block_diagonal, invariants, norm_data, GModule};
use crate::intlat::{hermite_basis, kernel_basis, FgAbGroup, IntMatrix, SparseCokernel, Subquotient};

pub const DEFAULT_DEGREE_CAP: i32 = 3;

#[derive(Clone, Debug)]
enum Engine {
    /// Torsion of `coker D_{r-1}`; the first `torsion` coordinates are kept.
    Sparse { coker: SparseCokernel, torsion: usize },
    /// Explicit cycles modulo boundaries.
    Sub(Subquotient),
}

/// `H^r(J, M)` with a presentation by cochains of the complete complex.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub degree: i32,
    pub group: FgAbGroup,
    /// Representative cocycles, one per coordinate, as vectors in `X_r`.
    pub generators: Vec<Vec<BigInt>>,
    /// Order of each coordinate.
    pub orders: Vec<BigInt>,
    engine: Engine,
}

impl CohomologyResult {
    /// Coordinates of the class of a cocycle in `X_r`.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        match &self.engine {
            Engine::Sparse { coker, torsion } => {
                let c = coker.coordinates(z);
                if c[*torsion..].iter().any(|x| !x.is_zero()) {
                    return Err(Error::Inconsistent("vector is not a cocycle".into()));
                }
                Ok(c[..*torsion].to_vec())
            }
            Engine::Sub(s) => s.coordinates(z).ok_or_else(|| Error::Inconsistent("vector is not a cocycle".into())),
        }
    }
}

fn check_degree(r: i32, cap: i32) -> Result<()> {
    if r.abs() > cap {
        Err(Error::DegreeCapExceeded { degree: r, cap })
    } else {
        Ok(())
    }
}

/// `Ĥ^r(J, M)` where `J` is the group acting on `M`, with the default degree cap.
pub fn tate(m: &GModule, r: i32) -> Result<CohomologyResult> {
    tate_with_cap(m, r, DEFAULT_DEGREE_CAP)
}

pub fn tate_with_cap(m: &GModule, r: i32, cap: i32) -> Result<CohomologyResult> {
    check_degree(r, cap)?;
    if !m.is_free() {
        return tate_presented(m, r);
    }
    match r {
        0 => closed_form_zero(m),
        -1 => closed_form_minus_one(m),
        _ => tate_from_complex(m, r),
    }
}

/// `M^J / N M`.
fn closed_form_zero(m: &GModule) -> Result<CohomologyResult> {
    let whole = m.group().whole();
    let inv = invariants(m, &whole)?;
    let nd = norm_data(m, &whole)?;
    from_subquotient(0, Subquotient::new(&inv.inclusion, &nd.norm)?)
}

/// `_N M / A_J M`.
fn closed_form_minus_one(m: &GModule) -> Result<CohomologyResult> {
    let nd = norm_data(m, &m.group().whole())?;
    from_subquotient(-1, Subquotient::new(&nd.kernel.inclusion, &nd.augmentation.inclusion)?)
}

fn from_subquotient(degree: i32, s: Subquotient) -> Result<CohomologyResult> {
    if !s.group().is_finite() {
        return Err(Error::Inconsistent(format!("degree {degree} cohomology is not finite")));
    }
    Ok(CohomologyResult {
        degree,
        group: s.group().clone(),
        generators: s.generators(),
        orders: s.orders().to_vec(),
        engine: Engine::Sub(s),
    })
}

/// For free `M` the cocycles form a saturated sublattice and `Ĥ^r` is finite, so
/// `Ĥ^r = torsion(X_r / D_{r-1} X_{r-1})`.
fn tate_from_complex(m: &GModule, r: i32) -> Result<CohomologyResult> {
    let c = BarComplex::new(m)?;
    let coker = SparseCokernel::new(&c.differential(r - 1));
    cohomology_from_cokernel(r, coker)
}

pub(crate) fn cohomology_from_cokernel(r: i32, coker: SparseCokernel) -> Result<CohomologyResult> {
    let group = coker.group().torsion();
    let torsion = group.invariant_factors.len();
    let generators: Vec<Vec<BigInt>> = (0..torsion).map(|i| coker.generator(i)).collect();
    let orders = coker.orders()[..torsion].to_vec();
    Ok(CohomologyResult { degree: r, group, generators, orders, engine: Engine::Sparse { coker, torsion } })
}

/// Dense route for presented `M = F / R`: cocycles `{c : D c in X(R)}` modulo `D X(F) + X(R)`.
fn tate_presented(m: &GModule, r: i32) -> Result<CohomologyResult> {
    let c = BarComplex::new(m)?;
    let rel_block = |t: i32| block_diagonal(&vec![m.relations().clone(); c.tuple_count(t)]);
    let d = c.differential(r).to_dense();
    let rel_next = rel_block(r + 1);
    let k = kernel_basis(&d.hstack(&-&rel_next));
    let cycles = hermite_basis(&k.submatrix(0..d.cols(), 0..k.cols()));
    let boundaries = c.differential(r - 1).to_dense().hstack(&rel_block(r));
    from_subquotient(r, Subquotient::new(&cycles, &boundaries)?)
}

/// `Ĥ^r` through the complete complex only, bypassing the closed forms (used as a cross-check).
pub fn tate_via_complex(m: &GModule, r: i32) -> Result<CohomologyResult> {
    if !m.is_free() {
        return tate_presented(m, r);
    }
    tate_from_complex(m, r)
}

/// Applies the differential `D_r` of `M`'s complete complex to a vector of `X_r`.
pub fn apply_differential(m: &GModule, r: i32, v: &[BigInt]) -> Result<Vec<BigInt>> {
    Ok(BarComplex::new(m)?.differential(r).mul_vec(v))
}

/// Dimension of `X_r` for `M`.
pub fn cochain_dim(m: &GModule, r: i32) -> usize {
    tuple_count(m.group().order(), r) * m.rank()
}

/// Applies a module map blockwise to a vector of `X_r` made of `tuples` blocks.
pub fn apply_blockwise(f: &IntMatrix, v: &[BigInt], tuples: usize) -> Vec<BigInt> {
    let n = f.cols();
    let mut out = Vec::with_capacity(tuples * f.rows());
    for b in 0..tuples {
        out.extend(f.mul_vec(&v[b * n..(b + 1) * n]));
    }
    out
}

/// Number of tuples indexing `X_r` for a group of the given order.
pub fn tuple_count(order: usize, r: i32) -> usize {
    let len = if r >= 0 { r } else { -r - 1 } as u32;
    order.pow(len)
}

#[cfg(test)]
pub(crate) fn is_cocycle(m: &GModule, r: i32, v: &[BigInt]) -> bool {
    apply_differential(m, r, v).unwrap().iter().all(Zero::is_zero)
}
