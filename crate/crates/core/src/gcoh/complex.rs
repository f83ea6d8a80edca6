//! The complete (Tate) complex built from the bar resolution.
//!
//! `X_t` is the group of inhomogeneous cochains `J^t -> M` for `t >= 0` and the chain group
//! `Z[J^s] (x) M` with `s = -t - 1` for `t <= -1`. The differential `D_t : X_t -> X_{t+1}` is
//! the bar coboundary for `t >= 0`, the norm map for `t = -1` and the bar boundary for
//! `t <= -2`. A tuple `(g_1, ..., g_k)` is numbered `sum g_i |J|^(k-i)` and its coordinate `j`
//! in `M` sits at position `tuple * n + j`.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gmod::GModule;
use crate::intlat::SparseMatrix;

pub struct BarComplex {
    order: usize,
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    act: Vec<Vec<i64>>,
}

impl BarComplex {
    pub fn new(m: &GModule) -> Result<Self> {
        let g = m.group();
        let order = g.order();
        let n = m.rank();
        let mut mul = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                mul[a * order + b] = g.mul(a, b);
            }
        }
        let inv = (0..order).map(|a| g.inv(a)).collect();
        let act = m
            .actions()
            .iter()
            .map(|a| {
                a.entries()
                    .iter()
                    .map(|x| x.to_i64().ok_or_else(|| Error::Inconsistent("action entry exceeds 64 bits".into())))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BarComplex { order, n, mul, inv, act })
    }

    pub fn module_rank(&self) -> usize {
        self.n
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    fn tuples(&self, len: usize) -> usize {
        self.order.pow(len as u32)
    }

    /// Number of `J`-tuples indexing `X_t`.
    pub fn tuple_count(&self, t: i32) -> usize {
        if t >= 0 {
            self.tuples(t as usize)
        } else {
            self.tuples((-t - 1) as usize)
        }
    }

    pub fn dim(&self, t: i32) -> usize {
        self.tuple_count(t) * self.n
    }

    fn decode(&self, mut idx: usize, len: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for k in (0..len).rev() {
            out[k] = idx % self.order;
            idx /= self.order;
        }
        out
    }

    fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &g| acc * self.order + g)
    }

    fn rho(&self, g: usize, row: usize, col: usize) -> i64 {
        self.act[g][row * self.n + col]
    }

    /// `D_t` as a sparse matrix with `dim(t+1)` rows and `dim(t)` columns.
    pub fn differential(&self, t: i32) -> SparseMatrix {
        let n = self.n;
        let mut out = SparseMatrix::new(self.dim(t + 1));
        if t == -1 {
            for i in 0..n {
                let mut col = Vec::new();
                for g in 0..self.order {
                    for j in 0..n {
                        col.push((j, self.rho(g, j, i)));
                    }
                }
                out.push_column(col);
            }
            return out;
        }
        if t >= 0 {
            let r = t as usize;
            let shift = self.tuples(r);
            for s_idx in 0..self.tuples(r) {
                let s = self.decode(s_idx, r);
                for i in 0..n {
                    let mut col = Vec::with_capacity(self.order * (n + r + 1));
                    for g1 in 0..self.order {
                        let row = (g1 * shift + s_idx) * n;
                        for j in 0..n {
                            col.push((row + j, self.rho(g1, j, i)));
                        }
                    }
                    let mut tup = vec![0; r + 1];
                    for k in 1..=r {
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        tup[..k - 1].copy_from_slice(&s[..k - 1]);
                        tup[k + 1..].copy_from_slice(&s[k..]);
                        for a in 0..self.order {
                            tup[k - 1] = a;
                            tup[k] = self.mul[self.inv[a] * self.order + s[k - 1]];
                            col.push((self.encode(&tup) * n + i, sign));
                        }
                    }
                    let sign = if (r + 1) % 2 == 0 { 1 } else { -1 };
                    for g in 0..self.order {
                        col.push(((s_idx * self.order + g) * n + i, sign));
                    }
                    out.push_column(col);
                }
            }
            return out;
        }
        let s_len = (-t - 1) as usize;
        for s_idx in 0..self.tuples(s_len) {
            let s = self.decode(s_idx, s_len);
            for i in 0..n {
                let mut col = Vec::with_capacity(n + s_len);
                let g1inv = self.inv[s[0]];
                let rest = self.encode(&s[1..]);
                for j in 0..n {
                    col.push((rest * n + j, self.rho(g1inv, j, i)));
                }
                let mut tup = Vec::with_capacity(s_len - 1);
                for k in 1..s_len {
                    tup.clear();
                    tup.extend_from_slice(&s[..k - 1]);
                    tup.push(self.mul[s[k - 1] * self.order + s[k]]);
                    tup.extend_from_slice(&s[k + 1..]);
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    col.push((self.encode(&tup) * n + i, sign));
                }
                let sign = if s_len % 2 == 0 { 1 } else { -1 };
                col.push((self.encode(&s[..s_len - 1]) * n + i, sign));
                out.push_column(col);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gmod::close_group;
    use crate::intlat::IntMatrix;

    fn module(gens: &[&[&[i64]]]) -> GModule {
        let n = gens[0].len();
        let g: Vec<(String, IntMatrix)> =
            gens.iter().enumerate().map(|(i, m)| (format!("g{i}"), IntMatrix::from_i64(m))).collect();
        GModule::tautological(Arc::new(close_group(n, &g, 64).unwrap()))
    }

    #[test]
    fn consecutive_differentials_compose_to_zero() {
        let ms = [
            module(&[&[&[0, 1], &[1, 0]]]),
            module(&[&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]], &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]]),
            module(&[&[&[0, -1], &[1, 0]]]),
        ];
        for m in &ms {
            let c = BarComplex::new(m).unwrap();
            for t in -4..=1 {
                let a = c.differential(t).to_dense();
                let b = c.differential(t + 1).to_dense();
                assert!((&b * &a).is_zero(), "D_{} D_{t} != 0", t + 1);
            }
        }
    }
}
