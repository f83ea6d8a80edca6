//! Cokernels of large sparse integer matrices.
//!
//! Unit pivots are eliminated first with a Markowitz-style ordering in checked `i128`
//! arithmetic; what remains is handed to the dense Smith form. Each elimination step removes
//! one generator of `Z^rows / colspan(A)` by rewriting it in terms of the others, so the
//! coordinate map is the replay of those rewrites followed by the dense coordinate map.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::abelian::{FgAbGroup, Quotient};
use super::matrix::IntMatrix;

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(nrows: usize) -> Self {
        SparseMatrix { nrows, cols: Vec::new() }
    }

    /// Appends a column; duplicate row entries are summed and zeros dropped.
    pub fn push_column(&mut self, mut entries: Vec<(usize, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(entries.len());
        for (r, a) in entries {
            debug_assert!(r < self.nrows);
            match out.last_mut() {
                Some(last) if last.0 == r => last.1 += a,
                _ => out.push((r, a)),
            }
        }
        out.retain(|e| e.1 != 0);
        self.cols.push(out);
    }

    pub fn rows(&self) -> usize {
        self.nrows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols.len(), "vector length mismatch");
        let mut out = vec![BigInt::zero(); self.nrows];
        for (x, col) in v.iter().zip(&self.cols) {
            if x.is_zero() {
                continue;
            }
            for &(r, a) in col {
                out[r] += x * a;
            }
        }
        out
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.nrows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, a) in col {
                m.set(r, j, BigInt::from(a));
            }
        }
        m
    }
}

#[derive(Clone, Debug)]
struct Pivot {
    row: usize,
    unit: i128,
    col: Vec<(usize, i128)>,
}

struct Overflow;

struct Eliminator {
    cols: Vec<HashMap<usize, i128>>,
    rows: Vec<HashSet<usize>>,
    row_dead: Vec<bool>,
    log: Vec<Pivot>,
}

impl Eliminator {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows = vec![HashSet::new(); m.nrows];
        let cols = m
            .cols
            .iter()
            .enumerate()
            .map(|(j, c)| {
                c.iter()
                    .map(|&(r, a)| {
                        rows[r].insert(j);
                        (r, a as i128)
                    })
                    .collect()
            })
            .collect();
        Eliminator { cols, rows, row_dead: vec![false; m.nrows], log: Vec::new() }
    }

    fn run(&mut self) -> Result<(), Overflow> {
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
            self.cols.iter().enumerate().filter(|(_, c)| !c.is_empty()).map(|(j, c)| Reverse((c.len(), j))).collect();
        while let Some(Reverse((nnz, c))) = heap.pop() {
            if self.cols[c].len() != nnz || nnz == 0 {
                continue;
            }
            let pivot_row = self.cols[c]
                .iter()
                .filter(|(_, a)| a.abs() == 1)
                .map(|(&r, _)| (self.rows[r].len(), r))
                .min();
            let Some((_, p)) = pivot_row else { continue };
            let touched = self.eliminate(p, c)?;
            for c2 in touched {
                let n = self.cols[c2].len();
                if n > 0 {
                    heap.push(Reverse((n, c2)));
                }
            }
        }
        Ok(())
    }

    fn eliminate(&mut self, p: usize, c: usize) -> Result<Vec<usize>, Overflow> {
        let unit = self.cols[c][&p];
        let mut pcol: Vec<(usize, i128)> = self.cols[c].iter().filter(|e| *e.0 != p).map(|(&r, &a)| (r, a)).collect();
        pcol.sort_unstable_by_key(|e| e.0);
        let mut others: Vec<usize> = self.rows[p].iter().copied().filter(|&j| j != c).collect();
        others.sort_unstable();
        for &c2 in &others {
            let f = self.cols[c2].remove(&p).expect("row pattern out of sync") * unit;
            for &(r, a) in &pcol {
                let delta = f.checked_mul(a).ok_or(Overflow)?;
                let cur = self.cols[c2].get(&r).copied().unwrap_or(0);
                let new = cur.checked_sub(delta).ok_or(Overflow)?;
                if new == 0 {
                    self.cols[c2].remove(&r);
                    self.rows[r].remove(&c2);
                } else {
                    self.cols[c2].insert(r, new);
                    self.rows[r].insert(c2);
                }
            }
        }
        for &(r, _) in &pcol {
            self.rows[r].remove(&c);
        }
        self.cols[c].clear();
        self.rows[p].clear();
        self.row_dead[p] = true;
        self.log.push(Pivot { row: p, unit, col: pcol });
        Ok(others)
    }
}

/// `Z^rows / colspan(A)` for a sparse `A`, with a coordinate map on ambient vectors.
#[derive(Clone, Debug)]
pub struct SparseCokernel {
    nrows: usize,
    log: Vec<Pivot>,
    alive: Vec<usize>,
    /// Positions (into `alive`) of rows met by some residual column; the others are free.
    touched: Vec<usize>,
    untouched: Vec<usize>,
    quot: Quotient,
    group: FgAbGroup,
    orders: Vec<BigInt>,
}

impl SparseCokernel {
    pub fn new(m: &SparseMatrix) -> Self {
        let mut e = Eliminator::new(m);
        if e.run().is_err() {
            let n = m.nrows;
            return Self::assemble(n, Vec::new(), (0..n).collect(), (0..n).collect(), Vec::new(), m.to_dense());
        }
        let alive: Vec<usize> = (0..m.nrows).filter(|&r| !e.row_dead[r]).collect();
        let live_cols: Vec<&HashMap<usize, i128>> = e.cols.iter().filter(|c| !c.is_empty()).collect();
        let met: HashSet<usize> = live_cols.iter().flat_map(|c| c.keys().copied()).collect();
        let (touched, untouched): (Vec<usize>, Vec<usize>) = (0..alive.len()).partition(|&i| met.contains(&alive[i]));
        let pos: HashMap<usize, usize> = touched.iter().enumerate().map(|(i, &t)| (alive[t], i)).collect();
        let mut residual = IntMatrix::zeros(touched.len(), live_cols.len());
        for (j, c) in live_cols.iter().enumerate() {
            for (r, a) in c.iter() {
                residual.set(pos[r], j, BigInt::from(*a));
            }
        }
        Self::assemble(m.nrows, e.log, alive, touched, untouched, residual)
    }

    fn assemble(
        nrows: usize,
        log: Vec<Pivot>,
        alive: Vec<usize>,
        touched: Vec<usize>,
        untouched: Vec<usize>,
        residual: IntMatrix,
    ) -> Self {
        let quot = Quotient::new(&residual);
        let group = quot.group().direct_sum(&FgAbGroup::free(untouched.len()));
        let mut orders = quot.orders().to_vec();
        orders.extend(std::iter::repeat_n(BigInt::zero(), untouched.len()));
        SparseCokernel { nrows, log, alive, touched, untouched, quot, group, orders }
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    /// Orders of the coordinates (0 for free ones); torsion coordinates come first.
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Rows that survived unit elimination (the residual dense problem size).
    pub fn residual_rows(&self) -> usize {
        self.touched.len()
    }

    fn project(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.nrows, "vector length mismatch");
        let mut w = v.to_vec();
        for piv in &self.log {
            if w[piv.row].is_zero() {
                continue;
            }
            let s = &w[piv.row] * BigInt::from(piv.unit);
            for &(r, a) in &piv.col {
                w[r] -= &s * BigInt::from(a);
            }
            w[piv.row] = BigInt::zero();
        }
        self.alive.iter().map(|&r| std::mem::take(&mut w[r])).collect()
    }

    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut p = self.project(v);
        let t: Vec<BigInt> = self.touched.iter().map(|&i| std::mem::take(&mut p[i])).collect();
        let mut out = self.quot.coordinates(&t);
        out.extend(self.untouched.iter().map(|&i| std::mem::take(&mut p[i])));
        out
    }

    /// Ambient representative of coordinate generator `i`.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut full = vec![BigInt::zero(); self.nrows];
        if i < self.quot.orders().len() {
            for (x, &t) in self.quot.generator(i).into_iter().zip(&self.touched) {
                full[self.alive[t]] = x;
            }
        } else {
            full[self.alive[self.untouched[i - self.quot.orders().len()]]] = BigInt::one();
        }
        full
    }

    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        (0..self.orders.len()).map(|i| self.generator(i)).collect()
    }

    pub fn is_zero(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).iter().all(Zero::is_zero)
    }
}

/// Convenience: unit vector of length `n`.
pub fn unit_vector(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::cokernel_group;

    fn sparse(rows: &[&[i64]]) -> SparseMatrix {
        let d = IntMatrix::from_i64(rows);
        let mut s = SparseMatrix::new(d.rows());
        for j in 0..d.cols() {
            let col = (0..d.rows())
                .map(|i| (i, i64::try_from(d.get(i, j)).unwrap()))
                .collect();
            s.push_column(col);
        }
        s
    }

    fn agrees(rows: &[&[i64]]) {
        let s = sparse(rows);
        let c = SparseCokernel::new(&s);
        let (g, _) = cokernel_group(&s.to_dense());
        assert_eq!(c.group(), &g);
        for j in 0..s.cols() {
            let col: Vec<BigInt> = s.to_dense().col(j);
            assert!(c.is_zero(&col));
        }
        for (i, gen) in c.generators().iter().enumerate() {
            let coords = c.coordinates(gen);
            for (k, x) in coords.iter().enumerate() {
                assert_eq!(x.is_one(), i == k, "generator {i} coordinate {k}");
            }
        }
    }

    #[test]
    fn matches_dense() {
        agrees(&[&[2, 4], &[6, 8]]);
        agrees(&[&[1, 0, 2], &[1, 1, 0], &[0, 3, 3], &[0, 0, 0]]);
        agrees(&[&[1, -1, 0, 0], &[-1, 1, 0, 0], &[0, 0, 2, 2], &[0, 0, -2, 2]]);
        agrees(&[&[-1, 1], &[1, -1], &[1, 1]]);
    }

    #[test]
    fn duplicate_entries_merge() {
        let mut s = SparseMatrix::new(2);
        s.push_column(vec![(0, 1), (0, 1), (1, 3), (1, -3)]);
        assert_eq!(s.column(0), &[(0, 2)]);
    }
}
