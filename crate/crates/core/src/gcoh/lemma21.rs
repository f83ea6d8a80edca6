use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::tate::tate;
use crate::error::{Error, Result};
use crate::gmod::{
    augmentation_generators, coinvariants, dual_module, invariants, restrict_action, GModule, QuotientGroup,
    SubgroupHandle,
};
use crate::intlat::{AbHom, FgAbGroup, IntMatrix, Quotient};

/// `0 -> H^1(J, M)^D -> (M^v)_J -q-> (M^J)^v -> 0` for a free `M`.
#[derive(Clone, Debug)]
pub struct Lemma21 {
    pub h1: FgAbGroup,
    pub coinv_dual: FgAbGroup,
    pub inv_dual: FgAbGroup,
    /// Restriction of linear forms to `M^J`, in the coordinates of `(M^v)_J` and of the dual
    /// basis of `M^J`.
    pub q: AbHom,
    /// Basis of `M^J` used for the target coordinates.
    pub invariant_basis: IntMatrix,
    pub kernel: FgAbGroup,
    pub surjective: bool,
    /// `<N f, x> = |J| <f, x>` for `x` in `M^J`.
    pub norm_identity: bool,
    pub exact: bool,
}

/// The sequence for `M` over its whole acting group.
pub fn lemma21_sequence(m: &GModule) -> Result<Lemma21> {
    if !m.is_free() {
        return Err(Error::NotFreeModule);
    }
    let whole = m.group().whole();
    let h1 = tate(m, 1)?.group;
    let k = invariants(m, &whole)?.inclusion;
    let dual = dual_module(m);
    let aug = augmentation_generators(&dual, &whole);
    let quot = Quotient::new(&aug);
    let cols: Vec<Vec<BigInt>> = quot.generators().iter().map(|f| k.transpose().mul_vec(f)).collect();
    let q = AbHom::new(
        quot.orders().to_vec(),
        vec![BigInt::zero(); k.cols()],
        IntMatrix::from_columns(&cols, k.cols()),
    )?;
    let norm = (0..m.group().order()).fold(IntMatrix::zeros(m.rank(), m.rank()), |acc, g| &acc + dual.action(g));
    let order = BigInt::from(m.group().order());
    let norm_identity = &k.transpose() * &norm == k.transpose().scale(&order);
    let kernel = q.kernel();
    let surjective = q.is_surjective();
    let exact = surjective && kernel.is_finite() && kernel == h1;
    Ok(Lemma21 {
        h1,
        coinv_dual: quot.group().clone(),
        inv_dual: FgAbGroup::free(k.cols()),
        q,
        invariant_basis: k,
        kernel,
        surjective,
        norm_identity,
        exact,
    })
}

/// `H^1(J, M)` for `M` over `G` and normal `J`, with the action of `G/J` given by
/// `(g f)(j) = g f(g^-1 j g)`, as matrices on the coordinates of `H^1`.
#[derive(Clone, Debug)]
pub struct H1WithAction {
    pub h1: super::tate::CohomologyResult,
    pub quotient: QuotientGroup,
    /// One matrix per element of `G/J`.
    pub action: Vec<IntMatrix>,
}

pub fn h1_with_residual_action(m: &GModule, j: &SubgroupHandle) -> Result<H1WithAction> {
    let g = m.group();
    let quotient = g.quotient(j)?;
    let mj = restrict_action(m, j);
    let (jg, embed) = g.subgroup_group(j);
    let back: std::collections::HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let h1 = tate(&mj, 1)?;
    let n = m.rank();
    let mut action = Vec::with_capacity(quotient.group.order());
    for &gamma in &quotient.lift {
        let rho = m.action(gamma);
        let cols: Vec<Vec<BigInt>> = h1
            .generators
            .iter()
            .map(|f| {
                let mut out = vec![BigInt::zero(); f.len()];
                for jj in 0..jg.order() {
                    let src = back[&g.conj(gamma, embed[jj])];
                    let v = rho.mul_vec(&f[src * n..(src + 1) * n]);
                    out[jj * n..(jj + 1) * n].clone_from_slice(&v);
                }
                h1.coordinates(&out)
            })
            .collect::<Result<_>>()?;
        action.push(IntMatrix::from_columns(&cols, h1.orders.len()));
    }
    Ok(H1WithAction { h1, quotient, action })
}

/// Pontryagin dual of a finite module given in diagonal coordinates with orders `d`, with
/// `(g phi)(x) = phi(g^-1 x)`. Returns the action matrices on the dual basis.
pub fn dual_of_finite_action(orders: &[BigInt], action: &[IntMatrix], inverse: &[usize]) -> Vec<IntMatrix> {
    let m = orders.len();
    (0..action.len())
        .map(|g| {
            let b = &action[inverse[g]];
            let mut out = IntMatrix::zeros(m, m);
            for k in 0..m {
                for i in 0..m {
                    let num = &orders[k] * b.get(i, k);
                    let (q, r) = num.div_rem(&orders[i]);
                    debug_assert!(r.is_zero());
                    out.set(k, i, q.mod_floor(&orders[k]));
                }
            }
            out
        })
        .collect()
}

/// `H^1(J, M)^D` as a presented module over `G/J`.
pub fn h1_dual_module(m: &GModule, j: &SubgroupHandle) -> Result<GModule> {
    let h = h1_with_residual_action(m, j)?;
    let q = &h.quotient.group;
    let inverse: Vec<usize> = (0..q.order()).map(|x| q.inv(x)).collect();
    let action = dual_of_finite_action(&h.h1.orders, &h.action, &inverse);
    let rel = IntMatrix::diagonal(&h.h1.orders);
    Ok(GModule::from_parts(q.clone(), action, rel))
}

/// Coinvariants of the dual under `J` with the residual action, used by the torus layer.
pub fn dual_coinvariants(m: &GModule, j: &SubgroupHandle) -> Result<(GModule, QuotientGroup)> {
    let (c, q) = coinvariants(&dual_module(m), j, true)?;
    Ok((c, q.expect("residual action requested")))
}
