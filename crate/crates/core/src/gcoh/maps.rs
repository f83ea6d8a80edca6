use num_bigint::BigInt;
use num_traits::One;

use super::complex::BarComplex;
use super::tate::{apply_blockwise, tate, tuple_count, CohomologyResult};
use crate::error::{Error, Result};
use crate::gmod::GModule;
use crate::intlat::{kernel_basis, lattice_eq, rank, smith_normal_form, AbHom, IntMatrix, LinearSolver};

/// Map on cohomology induced by an equivariant map `f : M -> M'` (ambient matrix).
pub fn induced_map(src: &GModule, dst: &GModule, f: &IntMatrix, r: i32) -> Result<AbHom> {
    if !src.is_equivariant_map(dst, f) {
        return Err(Error::NonEquivariantMap);
    }
    let hs = tate(src, r)?;
    let hd = tate(dst, r)?;
    induced_map_on(&hs, &hd, f, src.group().order())
}

/// Same, on already computed cohomology groups.
pub fn induced_map_on(hs: &CohomologyResult, hd: &CohomologyResult, f: &IntMatrix, order: usize) -> Result<AbHom> {
    let tuples = tuple_count(order, hs.degree);
    let cols: Vec<Vec<BigInt>> = hs
        .generators
        .iter()
        .map(|g| hd.coordinates(&apply_blockwise(f, g, tuples)))
        .collect::<Result<_>>()?;
    AbHom::new(hs.orders.clone(), hd.orders.clone(), IntMatrix::from_columns(&cols, hd.orders.len()))
}

/// `0 -> A -i-> B -p-> C -> 0` of free modules over a common group.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub a: GModule,
    pub b: GModule,
    pub c: GModule,
    pub i: IntMatrix,
    pub p: IntMatrix,
}

impl ShortExactSequence {
    /// Checks equivariance, injectivity of `i`, `im i = ker p` and surjectivity of `p`.
    pub fn new(a: GModule, b: GModule, c: GModule, i: IntMatrix, p: IntMatrix) -> Result<Self> {
        for m in [&a, &b, &c] {
            if !m.is_free() {
                return Err(Error::NotFreeModule);
            }
        }
        if a.group().order() != b.group().order() || b.group().order() != c.group().order() {
            return Err(Error::MismatchedGaloisData("modules over groups of different orders".into()));
        }
        if i.rows() != b.rank() || i.cols() != a.rank() || p.rows() != c.rank() || p.cols() != b.rank() {
            return Err(Error::NotExactInput("map shapes do not match the modules".into()));
        }
        if !a.is_equivariant_map(&b, &i) || !b.is_equivariant_map(&c, &p) {
            return Err(Error::NonEquivariantMap);
        }
        if rank(&i) != i.cols() {
            return Err(Error::NotExactInput("first map is not injective".into()));
        }
        if !lattice_eq(&i, &kernel_basis(&p)) {
            return Err(Error::NotExactInput("image of the first map differs from the kernel of the second".into()));
        }
        let s = smith_normal_form(&p);
        if s.rank != p.rows() || s.nonzero_diagonal().iter().any(|d| !d.is_one()) {
            return Err(Error::NotExactInput("second map is not surjective".into()));
        }
        Ok(ShortExactSequence { a, b, c, i, p })
    }

    fn section(&self) -> IntMatrix {
        LinearSolver::new(&self.p)
            .solve_matrix(&IntMatrix::identity(self.c.rank()))
            .expect("surjective map has a section")
    }

    fn retraction(&self) -> IntMatrix {
        LinearSolver::new(&self.i.transpose())
            .solve_matrix(&IntMatrix::identity(self.a.rank()))
            .expect("saturated injection has a retraction")
            .transpose()
    }
}

/// Connecting map `Ĥ^r(C) -> Ĥ^{r+1}(A)`.
pub fn connecting_map(ses: &ShortExactSequence, r: i32) -> Result<AbHom> {
    let hc = tate(&ses.c, r)?;
    let ha = tate(&ses.a, r + 1)?;
    connecting_map_on(ses, &hc, &ha)
}

pub fn connecting_map_on(ses: &ShortExactSequence, hc: &CohomologyResult, ha: &CohomologyResult) -> Result<AbHom> {
    let r = hc.degree;
    let order = ses.b.group().order();
    let s = ses.section();
    let l = ses.retraction();
    let d = BarComplex::new(&ses.b)?.differential(r);
    let mut cols = Vec::with_capacity(hc.generators.len());
    for z in &hc.generators {
        let lift = apply_blockwise(&s, z, tuple_count(order, r));
        let y = d.mul_vec(&lift);
        let a = apply_blockwise(&l, &y, tuple_count(order, r + 1));
        if apply_blockwise(&ses.i, &a, tuple_count(order, r + 1)) != y {
            return Err(Error::Inconsistent("coboundary of the lift does not come from the submodule".into()));
        }
        cols.push(ha.coordinates(&a)?);
    }
    AbHom::new(hc.orders.clone(), ha.orders.clone(), IntMatrix::from_columns(&cols, ha.orders.len()))
}

/// Exactness of the long sequence around degree `r`:
/// `H^r(A) -> H^r(B) -> H^r(C) -> H^{r+1}(A) -> H^{r+1}(B)`.
#[derive(Clone, Debug)]
pub struct LongExactReport {
    pub degree: i32,
    pub at_b: bool,
    pub at_c: bool,
    pub at_a_next: bool,
}

impl LongExactReport {
    pub fn all(&self) -> bool {
        self.at_b && self.at_c && self.at_a_next
    }
}

pub fn long_exact_sequence(ses: &ShortExactSequence, r: i32) -> Result<LongExactReport> {
    let order = ses.b.group().order();
    let ha = tate(&ses.a, r)?;
    let hb = tate(&ses.b, r)?;
    let hc = tate(&ses.c, r)?;
    let ha1 = tate(&ses.a, r + 1)?;
    let hb1 = tate(&ses.b, r + 1)?;
    let fi = induced_map_on(&ha, &hb, &ses.i, order)?;
    let fp = induced_map_on(&hb, &hc, &ses.p, order)?;
    let delta = connecting_map_on(ses, &hc, &ha1)?;
    let fi1 = induced_map_on(&ha1, &hb1, &ses.i, order)?;
    Ok(LongExactReport {
        degree: r,
        at_b: fi.is_exact_at(&fp),
        at_c: fp.is_exact_at(&delta),
        at_a_next: delta.is_exact_at(&fi1),
    })
}

