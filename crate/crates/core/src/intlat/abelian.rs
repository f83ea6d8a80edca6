//! Finitely generated abelian groups, quotients with coordinate maps, and homomorphisms
//! between groups given in diagonal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{hermite_basis, kernel_basis, LinearSolver};
use super::matrix::IntMatrix;
use super::snf::smith_left;
use crate::error::{Error, Result};

/// `Z^rank + Z/d_1 + ... + Z/d_k` with `d_i | d_{i+1}` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FgAbGroup {
    pub rank: usize,
    #[serde(with = "crate::json::int_vec")]
    pub invariant_factors: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { rank, invariant_factors: Vec::new() }
    }

    pub fn cyclic(d: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(&[d.into()])
    }

    /// Structure of a direct sum of cyclic groups; an order of 0 means `Z`.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let rels: Vec<BigInt> = orders.iter().map(|d| d.abs()).collect();
        let (torsion, free): (Vec<BigInt>, Vec<BigInt>) = rels.into_iter().partition(|d| !d.is_zero());
        let ef = super::snf::elementary_divisors(&IntMatrix::diagonal(&torsion));
        FgAbGroup {
            rank: free.len(),
            invariant_factors: ef.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn torsion(&self) -> FgAbGroup {
        FgAbGroup { rank: 0, invariant_factors: self.invariant_factors.clone() }
    }

    /// Exponent of the torsion part (1 if torsion-free).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut orders: Vec<BigInt> = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        orders.extend(std::iter::repeat_n(BigInt::zero(), self.rank + other.rank));
        Self::from_cyclic_orders(&orders)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Z^n / L` with a canonical coordinate map.
///
/// Coordinates are listed torsion first (in divisibility order), then free.
#[derive(Clone, Debug)]
pub struct Quotient {
    u: IntMatrix,
    uinv: IntMatrix,
    kept: Vec<usize>,
    orders: Vec<BigInt>,
    group: FgAbGroup,
}

impl Quotient {
    /// Quotient of `Z^rows` by the column span of `rel`.
    pub fn new(rel: &IntMatrix) -> Self {
        let n = rel.rows();
        let l = smith_left(rel);
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for i in 0..l.rank {
            let d = l.d.get(i, i);
            if !d.is_one() {
                kept.push(i);
                orders.push(d.clone());
            }
        }
        let torsion = orders.clone();
        for i in l.rank..n {
            kept.push(i);
            orders.push(BigInt::zero());
        }
        let group = FgAbGroup { rank: n - l.rank, invariant_factors: torsion };
        Quotient { u: l.u, uinv: l.uinv, kept, orders, group }
    }

    pub fn ambient(&self) -> usize {
        self.u.cols()
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    /// Order of each coordinate (0 for a free coordinate).
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        let w = self.u.mul_vec(v);
        self.kept
            .iter()
            .zip(&self.orders)
            .map(|(&i, d)| if d.is_zero() { w[i].clone() } else { w[i].mod_floor(d) })
            .collect()
    }

    /// Ambient representatives of the coordinate generators.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.kept.iter().map(|&i| self.uinv.col(i)).collect()
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.uinv.col(self.kept[i])
    }

    pub fn is_zero(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).iter().all(Zero::is_zero)
    }
}

/// Structure of `Z^rows / colspan(a)` and its coordinate map.
pub fn cokernel_group(a: &IntMatrix) -> (FgAbGroup, Quotient) {
    let q = Quotient::new(a);
    (q.group.clone(), q)
}

/// `S / B` for sublattices `B <= S <= Z^n`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    basis: IntMatrix,
    solver: LinearSolver,
    quot: Quotient,
}

impl Subquotient {
    pub fn new(sub: &IntMatrix, rel: &IntMatrix) -> Result<Self> {
        let basis = hermite_basis(sub);
        let solver = LinearSolver::new(&basis);
        let x = solver.solve_matrix(rel).ok_or_else(|| {
            Error::Inconsistent("relation lattice is not contained in the subgroup lattice".into())
        })?;
        let quot = Quotient::new(&x);
        Ok(Subquotient { basis, solver, quot })
    }

    pub fn group(&self) -> &FgAbGroup {
        self.quot.group()
    }

    pub fn orders(&self) -> &[BigInt] {
        self.quot.orders()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates of `v`, or `None` if `v` is not in `S`.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.solver.solve(v).map(|c| self.quot.coordinates(&c))
    }

    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.quot.generators().iter().map(|g| self.basis.mul_vec(g)).collect()
    }
}

fn relation_matrix(orders: &[BigInt]) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> = orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| {
            let mut c = vec![BigInt::zero(); orders.len()];
            c[i] = d.clone();
            c
        })
        .collect();
    IntMatrix::from_columns(&cols, orders.len())
}

/// Homomorphism `(+) Z/a_j -> (+) Z/b_i` (order 0 meaning `Z`), given by an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    src: Vec<BigInt>,
    dst: Vec<BigInt>,
    matrix: IntMatrix,
}

impl AbHom {
    pub fn new(src: Vec<BigInt>, dst: Vec<BigInt>, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != dst.len() || matrix.cols() != src.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a map from {} to {} coordinates",
                matrix.rows(),
                matrix.cols(),
                src.len(),
                dst.len()
            )));
        }
        let mut m = matrix;
        for i in 0..dst.len() {
            for j in 0..src.len() {
                let x = m.get(i, j).clone();
                let a = &src[j];
                let b = &dst[i];
                let ok = if b.is_zero() {
                    a.is_zero() || x.is_zero()
                } else {
                    (a * &x).is_multiple_of(b)
                };
                if !ok {
                    return Err(Error::Inconsistent(format!(
                        "matrix entry ({i},{j}) does not define a homomorphism"
                    )));
                }
                if !b.is_zero() {
                    m.set(i, j, x.mod_floor(b));
                }
            }
        }
        Ok(AbHom { src, dst, matrix: m })
    }

    pub fn identity(orders: Vec<BigInt>) -> Self {
        let n = orders.len();
        AbHom::new(orders.clone(), orders, IntMatrix::identity(n)).expect("identity is a homomorphism")
    }

    pub fn zero(src: Vec<BigInt>, dst: Vec<BigInt>) -> Self {
        let m = IntMatrix::zeros(dst.len(), src.len());
        AbHom { src, dst, matrix: m }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source_orders(&self) -> &[BigInt] {
        &self.src
    }

    pub fn target_orders(&self) -> &[BigInt] {
        &self.dst
    }

    pub fn source(&self) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(&self.src)
    }

    pub fn target(&self) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(&self.dst)
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix
            .mul_vec(x)
            .into_iter()
            .zip(&self.dst)
            .map(|(v, d)| if d.is_zero() { v } else { v.mod_floor(d) })
            .collect()
    }

    /// `[M | R_dst]`: its column span is the preimage lattice of the image.
    fn image_lattice(&self) -> IntMatrix {
        self.matrix.hstack(&relation_matrix(&self.dst))
    }

    /// Lattice of source vectors mapping to zero; contains the source relations.
    fn kernel_lattice(&self) -> IntMatrix {
        let k = kernel_basis(&self.image_lattice());
        let n = self.src.len();
        let gens = k.submatrix(0..n, 0..k.cols());
        hermite_basis(&gens.hstack(&relation_matrix(&self.src)))
    }

    pub fn kernel(&self) -> FgAbGroup {
        Subquotient::new(&self.kernel_lattice(), &relation_matrix(&self.src))
            .expect("source relations lie in the kernel")
            .group()
            .clone()
    }

    pub fn image(&self) -> FgAbGroup {
        Subquotient::new(&self.image_lattice(), &relation_matrix(&self.dst))
            .expect("target relations lie in the image lattice")
            .group()
            .clone()
    }

    pub fn cokernel(&self) -> FgAbGroup {
        cokernel_group(&self.image_lattice()).0
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn is_zero(&self) -> bool {
        self.image().is_trivial()
    }

    /// `other . self`.
    pub fn then(&self, other: &AbHom) -> Result<AbHom> {
        if other.src != self.dst {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        AbHom::new(self.src.clone(), other.dst.clone(), &other.matrix * &self.matrix)
    }

    /// `im(self) = ker(next)` inside the common middle group.
    pub fn is_exact_at(&self, next: &AbHom) -> bool {
        self.dst == next.src && hermite_basis(&self.image_lattice()) == next.kernel_lattice()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cokernel_examples() {
        let (g, _) = cokernel_group(&IntMatrix::from_i64(&[&[2]]));
        assert_eq!(g, FgAbGroup::cyclic(2));
        let (g, _) = cokernel_group(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(g.invariant_factors, b(&[2, 4]));
        let (g, _) = cokernel_group(&IntMatrix::zeros(2, 1));
        assert_eq!(g, FgAbGroup::free(2));
    }

    #[test]
    fn coordinates_kill_relations() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8], &[0, 0]]);
        let (g, q) = cokernel_group(&a);
        assert_eq!(g.rank, 1);
        for j in 0..a.cols() {
            assert!(q.is_zero(&a.col(j)));
        }
        for (i, gen) in q.generators().iter().enumerate() {
            let c = q.coordinates(gen);
            for (k, x) in c.iter().enumerate() {
                assert_eq!(x.is_one(), k == i);
            }
        }
    }

    #[test]
    fn cyclic_orders_normalize() {
        let g = FgAbGroup::from_cyclic_orders(&b(&[2, 3, 0, 1]));
        assert_eq!(g.rank, 1);
        assert_eq!(g.invariant_factors, b(&[6]));
        assert_eq!(g.to_string(), "Z + Z/6");
    }

    #[test]
    fn hom_kernel_image() {
        // Z/4 -> Z/2, 1 -> 1
        let f = AbHom::new(b(&[4]), b(&[2]), IntMatrix::from_i64(&[&[1]])).unwrap();
        assert_eq!(f.kernel(), FgAbGroup::cyclic(2));
        assert!(f.is_surjective());
        // Z -> Z, times 2
        let g = AbHom::new(b(&[0]), b(&[0]), IntMatrix::from_i64(&[&[2]])).unwrap();
        assert!(g.is_injective());
        assert_eq!(g.cokernel(), FgAbGroup::cyclic(2));
        let p = AbHom::new(b(&[0]), b(&[2]), IntMatrix::from_i64(&[&[1]])).unwrap();
        assert!(g.is_exact_at(&p));
        assert!(AbHom::new(b(&[2]), b(&[0]), IntMatrix::from_i64(&[&[1]])).is_err());
    }
}
