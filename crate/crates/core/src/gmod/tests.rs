use std::sync::Arc;

use super::*;
use crate::intlat::{lattice_eq, FgAbGroup, IntMatrix};

fn taut(gens: &[&[&[i64]]]) -> GModule {
    let n = gens.first().map_or(1, |g| g.len());
    let g: Vec<(String, IntMatrix)> =
        gens.iter().enumerate().map(|(i, m)| (format!("g{i}"), IntMatrix::from_i64(m))).collect();
    GModule::tautological(Arc::new(close_group(n, &g, 512).unwrap()))
}

fn sign() -> GModule {
    taut(&[&[&[-1]]])
}

fn swap() -> GModule {
    taut(&[&[&[0, 1], &[1, 0]]])
}

fn trivial_c2() -> GModule {
    let m = sign();
    GModule::trivial(m.group().clone(), 1)
}

#[test]
fn invariants_examples() {
    let m = sign();
    assert_eq!(invariants(&m, &m.group().whole()).unwrap().inclusion.cols(), 0);
    let m = swap();
    let inv = invariants(&m, &m.group().whole()).unwrap();
    assert!(lattice_eq(&inv.inclusion, &IntMatrix::from_i64(&[&[1], &[1]])));
    let m = trivial_c2();
    assert_eq!(invariants(&m, &m.group().whole()).unwrap().inclusion.cols(), 1);
}

#[test]
fn coinvariants_examples() {
    let m = sign();
    let (c, _) = coinvariants(&m, &m.group().whole(), true).unwrap();
    assert_eq!(c.structure(), FgAbGroup::cyclic(2));
    let m = swap();
    let (c, q) = coinvariants(&m, &m.group().whole(), true).unwrap();
    assert_eq!(c.structure(), FgAbGroup::free(1));
    assert_eq!(q.unwrap().group.order(), 1);
    let m = trivial_c2();
    assert_eq!(coinvariants(&m, &m.group().whole(), false).unwrap().0.structure(), FgAbGroup::free(1));
}

#[test]
fn residual_action_needs_normality() {
    let s3 = taut(&[&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]], &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]]);
    let h = s3.group().subgroups().iter().find(|h| h.order() == 2).unwrap().clone();
    assert!(!h.is_normal);
    assert!(coinvariants(&s3, &h, true).is_err());
    assert!(coinvariants(&s3, &h, false).is_ok());
}

#[test]
fn norm_data_examples() {
    let m = sign();
    let nd = norm_data(&m, &m.group().whole()).unwrap();
    assert!(nd.norm.is_zero());
    assert_eq!(nd.image.inclusion.cols(), 0);
    assert_eq!(nd.kernel.inclusion.cols(), 1);
    assert!(lattice_eq(&nd.augmentation.inclusion, &IntMatrix::from_i64(&[&[2]])));

    let m = trivial_c2();
    let nd = norm_data(&m, &m.group().whole()).unwrap();
    assert_eq!(nd.norm, IntMatrix::from_i64(&[&[2]]));
    assert!(lattice_eq(&nd.image.inclusion, &IntMatrix::from_i64(&[&[2]])));
    assert_eq!(nd.kernel.inclusion.cols(), 0);
    assert_eq!(nd.augmentation.inclusion.cols(), 0);

    let m = swap();
    let nd = norm_data(&m, &m.group().whole()).unwrap();
    assert!(lattice_eq(&nd.image.inclusion, &IntMatrix::from_i64(&[&[1], &[1]])));
    assert!(lattice_eq(&nd.kernel.inclusion, &IntMatrix::from_i64(&[&[1], &[-1]])));
}

#[test]
fn dual_examples() {
    let m = sign();
    let d = dual_module(&m);
    assert_eq!(d.action(1), &IntMatrix::from_i64(&[&[-1]]));
    let m = swap();
    let d = dual_module(&m);
    assert_eq!(d.action(1), m.action(1));
    let fin = GModule::from_parts(m.group().clone(), vec![IntMatrix::identity(1); 2], IntMatrix::from_i64(&[&[3]]));
    assert_eq!(dual_module(&fin).rank(), 0);
}

#[test]
fn induced_and_restricted() {
    let g = sign().group().clone();
    let ind = induced_module(1, g.clone());
    assert_eq!(ind.rank(), 2);
    assert_eq!(ind.action(1), &IntMatrix::from_i64(&[&[0, 1], &[1, 0]]));
    let triv = Arc::new(FiniteMatrixGroup::trivial(1));
    let ind = induced_module(3, triv);
    assert!(ind.acts_trivially());
    let c3 = taut(&[&[&[0, -1], &[1, -1]]]);
    assert_eq!(induced_module(2, c3.group().clone()).rank(), 6);

    let c4 = taut(&[&[&[0, -1], &[1, 0]]]);
    let reg = induced_module(1, c4.group().clone());
    let c2 = c4.group().subgroups().iter().find(|h| h.order() == 2).unwrap().clone();
    let r = restrict_action(&reg, &c2);
    assert_eq!(r.group().order(), 2);
    // Z[C4] restricted to C2 is free of rank 2: invariants and norm image agree.
    let w = r.group().whole();
    let inv = invariants(&r, &w).unwrap();
    let nd = norm_data(&r, &w).unwrap();
    assert_eq!(inv.inclusion.cols(), 2);
    assert!(lattice_eq(&inv.inclusion, &nd.image.inclusion));
    let t = restrict_action(&reg, &c4.group().trivial_subgroup());
    assert!(t.acts_trivially());
    let full = restrict_action(&reg, &c4.group().whole());
    assert_eq!(full.actions(), reg.actions());
}

#[test]
fn presented_module_rejects_bad_action() {
    let g = sign().group().clone();
    // Z/4 with sign action is fine; Z/5 with x -> 2x has order 4, so it is not a C2-module.
    let ok = GModule::new(g.clone(), vec![IntMatrix::from_i64(&[&[-1]])], IntMatrix::from_i64(&[&[4]]));
    assert!(ok.is_ok());
    let bad = GModule::new(g, vec![IntMatrix::from_i64(&[&[2]])], IntMatrix::from_i64(&[&[5]]));
    assert!(bad.is_err());
}

#[test]
fn invariants_of_non_orthogonal_action() {
    let m = taut(&[&[&[1, 1], &[0, -1]]]);
    let inv = invariants(&m, &m.group().whole()).unwrap();
    assert!(lattice_eq(&inv.inclusion, &IntMatrix::from_i64(&[&[1], &[0]])));
    let d = dual_module(&m);
    let inv = invariants(&d, &d.group().whole()).unwrap();
    assert!(lattice_eq(&inv.inclusion, &IntMatrix::from_i64(&[&[2], &[1]])));
}
