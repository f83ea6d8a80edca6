#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use neron_core::gmod::{close_group, FiniteMatrixGroup, GModule, SubgroupHandle};
use neron_core::IntMatrix;

pub const MAX_ORDER: usize = 24;

/// A finite subgroup of `GL_n(Z)`: signed permutations conjugated by a unimodular matrix.
#[derive(Clone, Debug)]
pub struct GroupCase {
    pub group: Arc<FiniteMatrixGroup>,
    /// Index into the normal subgroups.
    pub normal_pick: usize,
    pub any_pick: usize,
}

impl GroupCase {
    pub fn module(&self) -> GModule {
        GModule::tautological(self.group.clone())
    }

    pub fn normal(&self) -> SubgroupHandle {
        let normal: Vec<&SubgroupHandle> = self.group.subgroups().iter().filter(|h| h.is_normal).collect();
        normal[self.normal_pick % normal.len()].clone()
    }

    pub fn subgroup(&self) -> SubgroupHandle {
        let all = self.group.subgroups();
        all[self.any_pick % all.len()].clone()
    }
}

fn signed_permutation(perm: &[usize], signs: &[bool]) -> IntMatrix {
    let n = perm.len();
    let mut m = IntMatrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, BigInt::from(if signs[j] { -1 } else { 1 }));
    }
    m
}

pub fn unimodular(n: usize, ops: &[(usize, usize, bool)]) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    for &(i, j, neg) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            p.add_row_multiple(i, j, &BigInt::from(if neg { -1 } else { 1 }));
        }
    }
    p
}

fn generator(n: usize) -> impl Strategy<Value = IntMatrix> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), n))
        .prop_map(|(p, s)| signed_permutation(&p, &s))
}

pub fn group_case(max_rank: usize) -> impl Strategy<Value = GroupCase> {
    (1..=max_rank)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(generator(n), 0..=2),
                proptest::collection::vec((0..n, 0..n, any::<bool>()), 0..6),
                any::<usize>(),
                any::<usize>(),
            )
        })
        .prop_filter_map("group too large", |(n, gens, ops, normal_pick, any_pick)| {
            let p = unimodular(n, &ops);
            let pinv = p.unimodular_inverse().ok()?;
            let named: Vec<(String, IntMatrix)> =
                gens.iter().enumerate().map(|(i, g)| (format!("g{i}"), &(&pinv * g) * &p)).collect();
            let group = close_group(n, &named, MAX_ORDER).ok()?;
            Some(GroupCase { group: Arc::new(group), normal_pick, any_pick })
        })
}

pub fn small_matrix(max_dim: usize, max_entry: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-max_entry..=max_entry, r * c).prop_map(move |xs| {
            IntMatrix::from_vec(r, c, xs.into_iter().map(BigInt::from).collect()).expect("shape")
        })
    })
}
