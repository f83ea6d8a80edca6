use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{FiniteMatrixGroup, QuotientGroup, SubgroupHandle};
use crate::error::{Error, Result};
use crate::intlat::{
    cokernel_group, hermite_basis, kernel_basis, lattice_contains, lattice_eq, smith_normal_form, AbHom, FgAbGroup,
    IntMatrix, LinearSolver, Quotient,
};

/// `Z^n / R` with a linear action of a finite group, one matrix per group element.
#[derive(Clone, Debug)]
pub struct GModule {
    rank: usize,
    relations: IntMatrix,
    group: Arc<FiniteMatrixGroup>,
    action: Vec<IntMatrix>,
}

impl GModule {
    /// Module from the action of the group generators; the action of every element is
    /// derived through the group's spanning tree and then checked against the table.
    pub fn new(group: Arc<FiniteMatrixGroup>, generator_action: Vec<IntMatrix>, relations: IntMatrix) -> Result<Self> {
        let n = relations.rows();
        if generator_action.len() != group.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator matrices for {} generators",
                generator_action.len(),
                group.generators().len()
            )));
        }
        for (i, a) in generator_action.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(Error::DimensionMismatch(format!("action of generator {i} is not {n}x{n}")));
            }
        }
        let mut action = Vec::with_capacity(group.order());
        action.push(IntMatrix::identity(n));
        for &(p, g) in &group.spanning_tree()[1..] {
            let m = &action[p] * &generator_action[g];
            action.push(m);
        }
        let m = GModule { rank: n, relations, group, action };
        m.validate(&generator_action)?;
        Ok(m)
    }

    /// Module with an explicitly given action for every element (not re-validated).
    pub(crate) fn from_parts(group: Arc<FiniteMatrixGroup>, action: Vec<IntMatrix>, relations: IntMatrix) -> Self {
        debug_assert_eq!(action.len(), group.order());
        GModule { rank: relations.rows(), relations, group, action }
    }

    /// `Z^n` on which the matrix group acts through its own matrices.
    pub fn tautological(group: Arc<FiniteMatrixGroup>) -> Self {
        let n = group.degree();
        let action = group.elements().to_vec();
        GModule { rank: n, relations: IntMatrix::zeros(n, 0), group, action }
    }

    pub fn trivial(group: Arc<FiniteMatrixGroup>, n: usize) -> Self {
        let action = vec![IntMatrix::identity(n); group.order()];
        GModule { rank: n, relations: IntMatrix::zeros(n, 0), group, action }
    }

    /// Free module given by one matrix per generator.
    pub fn free(group: Arc<FiniteMatrixGroup>, generator_action: Vec<IntMatrix>) -> Result<Self> {
        let n = generator_action.first().map_or(0, IntMatrix::rows);
        Self::new(group, generator_action, IntMatrix::zeros(n, 0))
    }

    fn validate(&self, generator_action: &[IntMatrix]) -> Result<()> {
        for (i, a) in generator_action.iter().enumerate() {
            if !lattice_contains(&self.relations, &(a * &self.relations)) {
                return Err(Error::InvalidAction(format!("generator {i} does not preserve the relations")));
            }
        }
        let gens = self.group.generators();
        for x in 0..self.group.order() {
            for (gi, &g) in gens.iter().enumerate() {
                let lhs = &self.action[x] * &generator_action[gi];
                let rhs = &self.action[self.group.mul(x, g)];
                if !self.equal_mod_relations(&lhs, rhs) {
                    return Err(Error::InvalidAction(format!(
                        "generator relations of the group are violated at element {x}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn equal_mod_relations(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        let d = a - b;
        if self.relations.cols() == 0 {
            d.is_zero()
        } else {
            lattice_contains(&self.relations, &d)
        }
    }

    /// Ambient rank `n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn group(&self) -> &Arc<FiniteMatrixGroup> {
        &self.group
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn structure(&self) -> FgAbGroup {
        cokernel_group(&self.relations).0
    }

    pub fn acts_trivially(&self) -> bool {
        self.action.iter().all(|a| self.equal_mod_relations(a, &IntMatrix::identity(self.rank)))
    }

    pub fn acts_trivially_on(&self, h: &SubgroupHandle) -> bool {
        h.generators
            .iter()
            .all(|&g| self.equal_mod_relations(&self.action[g], &IntMatrix::identity(self.rank)))
    }

    /// Same module regarded over a group with a homomorphism `phi` into this module's group.
    pub fn pull_back(&self, group: Arc<FiniteMatrixGroup>, phi: &[usize]) -> GModule {
        let action = phi.iter().map(|&g| self.action[g].clone()).collect();
        GModule::from_parts(group, action, self.relations.clone())
    }

    /// `Z^n` matrix of an ambient map is equivariant (modulo relations) and preserves relations.
    pub fn is_equivariant_map(&self, target: &GModule, f: &IntMatrix) -> bool {
        if f.cols() != self.rank || f.rows() != target.rank {
            return false;
        }
        if !Arc::ptr_eq(&self.group, &target.group) && self.group.order() != target.group.order() {
            return false;
        }
        if target.relations.cols() > 0 || self.relations.cols() > 0 {
            if !lattice_contains(&target.relations, &(f * &self.relations)) {
                return false;
            }
        }
        self.group.generators().iter().all(|&g| {
            let lhs = f * &self.action[g];
            let rhs = &target.action[g] * f;
            target.equal_mod_relations(&lhs, &rhs)
        })
    }
}

/// Stacked `(rho(h) - 1)` over the generators of `h`, as columns spanning `A_H M`.
pub fn augmentation_generators(m: &GModule, h: &SubgroupHandle) -> IntMatrix {
    let id = IntMatrix::identity(m.rank);
    let parts: Vec<IntMatrix> = h.generators.iter().map(|&g| m.action(g) - &id).collect();
    IntMatrix::hstack_all(&parts, m.rank)
}

/// Same, over every element of `h`.
pub fn augmentation_generators_all(m: &GModule, h: &SubgroupHandle) -> IntMatrix {
    let id = IntMatrix::identity(m.rank);
    let parts: Vec<IntMatrix> = h.elements.iter().map(|&g| m.action(g) - &id).collect();
    IntMatrix::hstack_all(&parts, m.rank)
}

/// Action of every element on a `G`-stable sublattice with basis `basis` (full column rank).
fn restricted_actions(m: &GModule, basis: &IntMatrix) -> Result<Vec<IntMatrix>> {
    let solver = LinearSolver::new(basis);
    m.action
        .iter()
        .map(|a| {
            solver
                .solve_matrix(&(a * basis))
                .ok_or_else(|| Error::Inconsistent("sublattice is not stable under the action".into()))
        })
        .collect()
}

/// A stable sublattice of an ambient module together with its inclusion.
#[derive(Clone, Debug)]
pub struct Submodule {
    /// Columns are the basis of the sublattice in ambient coordinates.
    pub inclusion: IntMatrix,
    pub module: GModule,
}

/// Submodule generated by the columns of `gens`; for a presented module this is
/// `(span(gens) + R) / R`.
pub fn submodule(m: &GModule, gens: &IntMatrix) -> Result<Submodule> {
    let basis = if m.relations.cols() == 0 { hermite_basis(gens) } else { hermite_basis(&gens.hstack(&m.relations)) };
    let action = restricted_actions(m, &basis)?;
    let rel = LinearSolver::new(&basis).solve_matrix(&m.relations).expect("relations lie in the span");
    Ok(Submodule { module: GModule::from_parts(m.group.clone(), action, rel), inclusion: basis })
}

/// Basis of the intersection of two column spans.
pub fn intersect(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let k = kernel_basis(&a.hstack(&-b));
    let x = k.submatrix(0..a.cols(), 0..k.cols());
    hermite_basis(&(a * &x))
}

/// `M^H` as a module over the whole group when `H` is normal, otherwise over `H` itself.
///
/// For a presented module this is `{x : (h - 1)x in R} / R`, presented on a basis of that lattice.
pub fn invariants(m: &GModule, h: &SubgroupHandle) -> Result<Submodule> {
    if !h.is_normal {
        let r = restrict_action(m, h);
        let whole = r.group.whole();
        return invariants(&r, &whole);
    }
    let n = m.rank;
    let id = IntMatrix::identity(n);
    let parts: Vec<IntMatrix> = h.generators.iter().map(|&g| m.action(g) - &id).collect();
    let a = IntMatrix::vstack_all(&parts, n);
    let lat = if m.relations.cols() == 0 {
        kernel_basis(&a)
    } else {
        let hk = h.generators.len();
        let rel_blocks: Vec<IntMatrix> = (0..hk).map(|_| m.relations.clone()).collect();
        let rb = block_diagonal(&rel_blocks);
        let k = kernel_basis(&a.hstack(&-&rb));
        hermite_basis(&k.submatrix(0..n, 0..k.cols()))
    };
    let action = restricted_actions(m, &lat)?;
    let solver = LinearSolver::new(&lat);
    let rel = solver.solve_matrix(&m.relations).expect("relations are invariant");
    Ok(Submodule { module: GModule::from_parts(m.group.clone(), action, rel), inclusion: lat })
}

/// `M / A_H M`. With `residual`, the result is a module over `G/H` (requires `H` normal),
/// acting through the minimal-index coset representatives; otherwise over the trivial group.
pub fn coinvariants(m: &GModule, h: &SubgroupHandle, residual: bool) -> Result<(GModule, Option<QuotientGroup>)> {
    let rel = m.relations.hstack(&augmentation_generators(m, h));
    if residual {
        let q = m.group.quotient(h)?;
        let action = q.lift.iter().map(|&g| m.action[g].clone()).collect();
        let module = GModule::from_parts(q.group.clone(), action, rel);
        Ok((module, Some(q)))
    } else {
        let triv = Arc::new(FiniteMatrixGroup::trivial(m.group.degree()));
        Ok((GModule::from_parts(triv, vec![IntMatrix::identity(m.rank)], rel), None))
    }
}

/// Map `M_H -> M'_H` induced by an equivariant ambient map `f`, in the coordinates of
/// [`Quotient`] on both sides.
pub fn coinvariant_map(src: &GModule, dst: &GModule, f: &IntMatrix, h: &SubgroupHandle) -> Result<AbHom> {
    if !src.is_equivariant_map(dst, f) {
        return Err(Error::NonEquivariantMap);
    }
    let qs = Quotient::new(&src.relations.hstack(&augmentation_generators(src, h)));
    let qd = Quotient::new(&dst.relations.hstack(&augmentation_generators(dst, h)));
    let cols: Vec<Vec<BigInt>> = qs.generators().iter().map(|g| qd.coordinates(&f.mul_vec(g))).collect();
    AbHom::new(qs.orders().to_vec(), qd.orders().to_vec(), IntMatrix::from_columns(&cols, qd.orders().len()))
}

/// The same module written in the basis given by the columns of the unimodular `p`: the new
/// action is `p^-1 rho(g) p`.
pub fn change_basis(m: &GModule, p: &IntMatrix) -> Result<GModule> {
    let pinv = p.unimodular_inverse()?;
    let action = m.action.iter().map(|a| &(&pinv * a) * p).collect();
    Ok(GModule::from_parts(m.group.clone(), action, &pinv * &m.relations))
}

/// Module over `G/H` for a module on which `H` acts trivially.
pub fn descend(m: &GModule, q: &QuotientGroup) -> GModule {
    let action = q.lift.iter().map(|&g| m.action[g].clone()).collect();
    GModule::from_parts(q.group.clone(), action, m.relations.clone())
}

/// Norm map and the lattices attached to it, for a free module.
#[derive(Clone, Debug)]
pub struct NormData {
    pub norm: IntMatrix,
    /// `N M`
    pub image: Submodule,
    /// `_N M`, saturated
    pub kernel: Submodule,
    /// `A_H M`
    pub augmentation: Submodule,
}

pub fn norm_matrix(m: &GModule, h: &SubgroupHandle) -> IntMatrix {
    h.elements
        .iter()
        .fold(IntMatrix::zeros(m.rank, m.rank), |acc, &g| &acc + m.action(g))
}

pub fn norm_data(m: &GModule, h: &SubgroupHandle) -> Result<NormData> {
    if !m.is_free() {
        return Err(Error::NotFreeModule);
    }
    if !h.is_normal {
        return Err(Error::NonNormalSubgroupForResidualAction);
    }
    let norm = norm_matrix(m, h);
    let image = submodule(m, &norm)?;
    let kernel = submodule(m, &kernel_basis(&norm))?;
    let augmentation = submodule(m, &augmentation_generators(m, h))?;
    Ok(NormData { norm, image, kernel, augmentation })
}

/// Linear dual `Hom(M, Z)` with `(g f)(m) = f(g^-1 m)`.
///
/// Returns the module together with its basis inside the ambient dual `Z^n`.
pub fn dual_module_with_basis(m: &GModule) -> (GModule, IntMatrix) {
    if m.is_free() {
        let action = (0..m.group.order()).map(|g| m.action[m.group.inv(g)].transpose()).collect();
        let n = m.rank;
        return (GModule::from_parts(m.group.clone(), action, IntMatrix::zeros(n, 0)), IntMatrix::identity(n));
    }
    let basis = kernel_basis(&m.relations.transpose());
    let solver = LinearSolver::new(&basis);
    let action = (0..m.group.order())
        .map(|g| {
            let t = m.action[m.group.inv(g)].transpose();
            solver.solve_matrix(&(&t * &basis)).expect("dual lattice is stable")
        })
        .collect();
    let k = basis.cols();
    (GModule::from_parts(m.group.clone(), action, IntMatrix::zeros(k, 0)), basis)
}

pub fn dual_module(m: &GModule) -> GModule {
    dual_module_with_basis(m).0
}

/// `Z^d[G]`: block `k` is the copy of `Z^d` indexed by element `k`, and `g` sends block `k`
/// to block `g k`.
pub fn induced_module(d: usize, group: Arc<FiniteMatrixGroup>) -> GModule {
    let n = group.order();
    let action = (0..n)
        .map(|g| {
            let mut a = IntMatrix::zeros(d * n, d * n);
            for k in 0..n {
                let t = group.mul(g, k);
                for i in 0..d {
                    a.set(t * d + i, k * d + i, 1.into());
                }
            }
            a
        })
        .collect();
    GModule::from_parts(group, action, IntMatrix::zeros(d * n, 0))
}

pub fn restrict_action(m: &GModule, h: &SubgroupHandle) -> GModule {
    let (sub, embed) = m.group.subgroup_group(h);
    m.pull_back(sub, &embed)
}

/// Quotient of a free module by a saturated stable sublattice, with the projection matrix.
pub fn quotient_by_saturated(m: &GModule, sub: &IntMatrix) -> Result<(GModule, IntMatrix)> {
    let n = m.rank;
    let k = sub.cols();
    let s = smith_normal_form(sub);
    if (0..s.rank).any(|i| s.d.get(i, i) != &BigInt::from(1)) || s.rank != k {
        return Err(Error::NonFreeCokernel);
    }
    let uinv = s.u.unimodular_inverse()?;
    let proj = s.u.submatrix(k..n, 0..n);
    let section = uinv.submatrix(0..n, k..n);
    let action = m.action.iter().map(|a| &(&proj * a) * &section).collect();
    Ok((GModule::from_parts(m.group.clone(), action, IntMatrix::zeros(n - k, 0)), proj))
}

pub fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
    let rows: usize = blocks.iter().map(IntMatrix::rows).sum();
    let cols: usize = blocks.iter().map(IntMatrix::cols).sum();
    let mut out = IntMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                let x = b.get(i, j);
                if !x.is_zero() {
                    out.set(r0 + i, c0 + j, x.clone());
                }
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    out
}

/// Free module check that also accepts zero relation columns.
pub fn require_free(m: &GModule) -> Result<()> {
    if m.is_free() {
        Ok(())
    } else {
        Err(Error::NotFreeModule)
    }
}

/// Are two stable sublattices equal?
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    lattice_eq(a, b)
}
