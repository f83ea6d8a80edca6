use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith form `U * A * V = D` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// The `min(rows, cols)` diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero diagonal entries (these include units).
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().take(self.rank).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    uinv: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(i, j);
        }
        if let Some(w) = self.uinv.as_mut() {
            w.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        if let Some(u) = self.u.as_mut() {
            u.add_row_multiple(dst, src, k);
        }
        if let Some(w) = self.uinv.as_mut() {
            w.add_col_multiple(src, dst, &-k);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        if let Some(v) = self.v.as_mut() {
            v.add_col_multiple(dst, src, k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = self.u.as_mut() {
            u.negate_row(i);
        }
        if let Some(w) = self.uinv.as_mut() {
            w.negate_col(i);
        }
    }

    /// Smallest-magnitude nonzero entry in the trailing block, first in row-major order.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let m = x.abs();
                if best.as_ref().is_none_or(|b| m < b.2) {
                    let one = m.is_one();
                    best = Some((i, j, m));
                    if one {
                        let b = best.unwrap();
                        return Some((b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    /// Clears row and column `t` outside the pivot. Returns when both are zero.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let mut dirty = false;
            for i in t + 1..self.a.rows() {
                if self.a.get(i, t).is_zero() {
                    continue;
                }
                let q = self.a.get(i, t).div_floor(self.a.get(t, t));
                self.add_row(i, t, &-q);
                if !self.a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..self.a.cols() {
                if self.a.get(t, j).is_zero() {
                    continue;
                }
                let q = self.a.get(t, j).div_floor(self.a.get(t, t));
                self.add_col(j, t, &-q);
                if !self.a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                return;
            }
            // A remainder is smaller than the pivot; move the smallest one in.
            let mut best: Option<(bool, usize, BigInt)> = None;
            for i in t + 1..self.a.rows() {
                let x = self.a.get(i, t);
                if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                    best = Some((true, i, x.abs()));
                }
            }
            for j in t + 1..self.a.cols() {
                let x = self.a.get(t, j);
                if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                    best = Some((false, j, x.abs()));
                }
            }
            if let Some((is_row, k, _)) = best {
                if is_row {
                    self.swap_rows(t, k);
                } else {
                    self.swap_cols(t, k);
                }
            }
        }
    }

    fn run(mut self) -> (IntMatrix, Option<IntMatrix>, Option<IntMatrix>, Option<IntMatrix>, usize) {
        let (m, n) = (self.a.rows(), self.a.cols());
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.clear_cross(t);
                let p = self.a.get(t, t).clone();
                let bad = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.a.get(i, j).is_multiple_of(&p))
                });
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        (self.a, self.u, self.uinv, self.v, t)
    }
}

/// Smith normal form with deterministic smallest-magnitude pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let r = Reducer {
        a: a.clone(),
        u: Some(IntMatrix::identity(a.rows())),
        uinv: None,
        v: Some(IntMatrix::identity(a.cols())),
    };
    let (d, u, _, v, rank) = r.run();
    Snf { u: u.unwrap(), d, v: v.unwrap(), rank }
}

/// Left-side Smith data: `U`, `U^-1`, `D` and the rank, with `U * A * V = D`
/// for some unimodular `V` that is not materialized.
#[derive(Clone, Debug)]
pub struct LeftSnf {
    pub u: IntMatrix,
    pub uinv: IntMatrix,
    pub d: IntMatrix,
    pub rank: usize,
}

impl LeftSnf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_left(a: &IntMatrix) -> LeftSnf {
    let r = Reducer {
        a: a.clone(),
        u: Some(IntMatrix::identity(a.rows())),
        uinv: Some(IntMatrix::identity(a.rows())),
        v: None,
    };
    let (d, u, uinv, _, rank) = r.run();
    LeftSnf { u: u.unwrap(), uinv: uinv.unwrap(), d, rank }
}

/// Nonzero Smith diagonal entries (units included), without transforms.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let r = Reducer { a: a.clone(), u: None, uinv: None, v: None };
    let (d, _, _, _, rank) = r.run();
    (0..rank).map(|i| d.get(i, i).clone()).collect()
}

pub fn rank(a: &IntMatrix) -> usize {
    elementary_divisors(a).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> Snf {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        let diag = s.diagonal();
        for i in 0..diag.len() {
            for j in 0..diag.len() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
            if i + 1 < s.rank {
                assert!(diag[i + 1].is_multiple_of(&diag[i]));
            }
        }
        s
    }

    #[test]
    fn identity_case() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn two_four_case() {
        let s = check(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_case() {
        let s = check(&IntMatrix::zeros(2, 2));
        assert_eq!(s.diagonal(), vec![BigInt::zero(), BigInt::zero()]);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn rectangular_and_nontrivial_divisibility() {
        check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        let s = check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        check(&IntMatrix::from_i64(&[&[1, 2, 3, 4], &[5, 6, 7, 8], &[9, 10, 11, 12]]));
        check(&IntMatrix::from_i64(&[&[0], &[0], &[4]]));
        check(&IntMatrix::zeros(0, 3));
    }

    #[test]
    fn left_inverse_tracked() {
        let a = IntMatrix::from_i64(&[&[4, 6, 9], &[2, -3, 5], &[7, 1, 1], &[0, 2, 2]]);
        let l = smith_left(&a);
        assert!((&l.u * &l.uinv).is_identity());
    }

    #[test]
    fn deterministic() {
        let a = IntMatrix::from_i64(&[&[4, 6, 9], &[2, -3, 5], &[7, 1, 1]]);
        let s1 = smith_normal_form(&a);
        let s2 = smith_normal_form(&a);
        assert_eq!(s1.u, s2.u);
        assert_eq!(s1.v, s2.v);
    }
}
