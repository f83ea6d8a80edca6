//! Sublattices of `Z^n` given by generating columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, Snf};
use crate::error::{Error, Result};

/// Canonical basis (column Hermite form) of the lattice spanned by the columns of `gens`.
///
/// The returned `n x r` matrix has full column rank; its columns are in echelon form with
/// strictly increasing pivot rows, positive pivots, and entries of earlier columns reduced
/// into `[0, pivot)` on each pivot row. Two generating sets span the same lattice iff their
/// Hermite bases are equal.
pub fn hermite_basis(gens: &IntMatrix) -> IntMatrix {
    // Row Hermite form of the transpose: each row is a generator.
    let n = gens.rows();
    let mut a = gens.transpose();
    let k = a.rows();
    let mut r = 0;
    for c in 0..n {
        if r == k {
            break;
        }
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for i in r..k {
                let x = a.get(i, c);
                if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.1) {
                    best = Some((i, x.abs()));
                }
            }
            let Some((pi, _)) = best else { break };
            a.swap_rows(r, pi);
            let mut done = true;
            for i in r + 1..k {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let q = a.get(i, c).div_floor(a.get(r, c));
                a.add_row_multiple(i, r, &-q);
                if !a.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            let q = a.get(i, c).div_floor(a.get(r, c));
            a.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    a.submatrix(0..r, 0..n).transpose()
}

/// Saturated basis of `{x : A x = 0}` as columns, in Hermite form.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let idx: Vec<usize> = (snf.rank..a.cols()).collect();
    hermite_basis(&snf.v.select_columns(&idx))
}

/// Saturation `(L (x) Q) ∩ Z^n` of the column span of `gens`.
pub fn saturation(gens: &IntMatrix) -> IntMatrix {
    let ann = kernel_basis(&gens.transpose());
    if ann.cols() == 0 {
        return IntMatrix::identity(gens.rows());
    }
    kernel_basis(&ann.transpose())
}

pub fn lattice_eq(a: &IntMatrix, b: &IntMatrix) -> bool {
    hermite_basis(a) == hermite_basis(b)
}

/// Is every column of `sub` in the column span of `sup`?
pub fn lattice_contains(sup: &IntMatrix, sub: &IntMatrix) -> bool {
    LinearSolver::new(sup).solve_matrix(sub).is_some()
}

/// Integer solutions of `A x = b` for a fixed `A`.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    snf: Snf,
}

impl LinearSolver {
    pub fn new(a: &IntMatrix) -> Self {
        LinearSolver { snf: smith_normal_form(a) }
    }

    pub fn rows(&self) -> usize {
        self.snf.u.cols()
    }

    pub fn cols(&self) -> usize {
        self.snf.v.rows()
    }

    /// Some integer `x` with `A x = b`, or `None` when no integer solution exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows(), "right-hand side length mismatch");
        let ub = self.snf.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.cols()];
        for (i, val) in ub.iter().enumerate() {
            if i < self.snf.rank {
                let d = self.snf.d.get(i, i);
                let (q, r) = val.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !val.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }

    pub fn solve_matrix(&self, b: &IntMatrix) -> Option<IntMatrix> {
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            cols.push(self.solve(&b.col(j))?);
        }
        Some(IntMatrix::from_columns(&cols, self.cols()))
    }
}

/// Solves `A X = B`; errors if some column has no integer solution.
pub fn solve_matrix(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    LinearSolver::new(a)
        .solve_matrix(b)
        .ok_or_else(|| Error::NoIntegerSolution)
}
