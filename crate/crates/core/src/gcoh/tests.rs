use std::sync::Arc;

use super::tate::is_cocycle;
use super::*;
use crate::gmod::{close_group, dual_module, induced_module, GModule};
use crate::intlat::{FgAbGroup, IntMatrix};

fn taut(gens: &[&[&[i64]]]) -> GModule {
    let n = gens[0].len();
    let g: Vec<(String, IntMatrix)> =
        gens.iter().enumerate().map(|(i, m)| (format!("g{i}"), IntMatrix::from_i64(m))).collect();
    GModule::tautological(Arc::new(close_group(n, &g, 512).unwrap()))
}

fn sign() -> GModule {
    taut(&[&[&[-1]]])
}

fn triv() -> GModule {
    GModule::trivial(sign().group().clone(), 1)
}

fn regular() -> GModule {
    induced_module(1, sign().group().clone())
}

fn s3_perm() -> GModule {
    taut(&[&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]], &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]])
}

#[test]
fn small_groups() {
    assert_eq!(tate(&triv(), 0).unwrap().group, FgAbGroup::cyclic(2));
    assert!(tate(&triv(), -1).unwrap().group.is_trivial());
    assert_eq!(tate(&sign(), 1).unwrap().group, FgAbGroup::cyclic(2));
    assert!(tate(&sign(), 2).unwrap().group.is_trivial());
    assert_eq!(tate(&triv(), 2).unwrap().group, FgAbGroup::cyclic(2));
    assert_eq!(tate(&triv(), -2).unwrap().group, FgAbGroup::cyclic(2));
    for r in -3..=3 {
        assert!(tate(&regular(), r).unwrap().group.is_trivial(), "degree {r}");
    }
    assert!(matches!(tate(&triv(), 4), Err(crate::Error::DegreeCapExceeded { .. })));
}

#[test]
fn closed_forms_match_complex() {
    for m in [sign(), triv(), regular(), s3_perm(), taut(&[&[&[0, -1], &[1, 0]]])] {
        for r in [-1, 0] {
            let a = tate(&m, r).unwrap();
            let b = tate_via_complex(&m, r).unwrap();
            assert_eq!(a.group, b.group, "degree {r}");
        }
    }
}

#[test]
fn generators_are_cocycles() {
    for m in [sign(), triv(), s3_perm()] {
        for r in -3..=3 {
            let h = tate(&m, r).unwrap();
            for g in &h.generators {
                assert!(is_cocycle(&m, r, g), "degree {r}");
            }
        }
    }
}

#[test]
fn s3_permutation_module() {
    // Z^3 with S3 permuting coordinates is induced from the trivial module of a subgroup of
    // order 2, so its cohomology is that of C2 with trivial coefficients.
    let m = s3_perm();
    for r in -3..=3 {
        assert_eq!(tate(&m, r).unwrap().group.order().unwrap() == 2.into(), r % 2 == 0, "degree {r}");
    }
}

#[test]
fn duality_on_small_examples() {
    for m in [sign(), triv(), s3_perm(), taut(&[&[&[0, -1], &[1, 0]]])] {
        let d = dual_module(&m);
        for r in -2..=2 {
            assert_eq!(tate(&m, r).unwrap().group, tate(&d, -r).unwrap().group);
        }
    }
}

#[test]
fn presented_coefficients() {
    let g = sign().group().clone();
    let z2 = GModule::new(g.clone(), vec![IntMatrix::identity(1)], IntMatrix::from_i64(&[&[2]])).unwrap();
    for r in -2..=2 {
        assert_eq!(tate(&z2, r).unwrap().group, FgAbGroup::cyclic(2), "degree {r}");
    }
    let z3 = GModule::new(g, vec![IntMatrix::from_i64(&[&[-1]])], IntMatrix::from_i64(&[&[3]])).unwrap();
    for r in -2..=2 {
        assert!(tate(&z3, r).unwrap().group.is_trivial());
    }
}

#[test]
fn induced_maps() {
    let m = triv();
    let id = induced_map(&m, &m, &IntMatrix::identity(1), 0).unwrap();
    assert!(id.is_isomorphism());
    let zero = GModule::trivial(m.group().clone(), 0);
    let z = induced_map(&m, &zero, &IntMatrix::zeros(0, 1), 0).unwrap();
    assert!(z.is_zero());
    let aug = induced_map(&regular(), &m, &IntMatrix::from_i64(&[&[1, 1]]), 0).unwrap();
    assert!(aug.is_zero());
    assert_eq!(
        induced_map(&sign(), &triv(), &IntMatrix::identity(1), 0).unwrap_err(),
        crate::Error::NonEquivariantMap
    );
}

fn augmentation_sequence() -> ShortExactSequence {
    ShortExactSequence::new(
        sign(),
        regular(),
        triv(),
        IntMatrix::from_i64(&[&[1], &[-1]]),
        IntMatrix::from_i64(&[&[1, 1]]),
    )
    .unwrap()
}

fn norm_sequence() -> ShortExactSequence {
    ShortExactSequence::new(
        triv(),
        regular(),
        sign(),
        IntMatrix::from_i64(&[&[1], &[1]]),
        IntMatrix::from_i64(&[&[1, -1]]),
    )
    .unwrap()
}

#[test]
fn connecting_maps() {
    let d = connecting_map(&augmentation_sequence(), 0).unwrap();
    assert_eq!(d.source(), FgAbGroup::cyclic(2));
    assert!(d.is_isomorphism());
    let d = connecting_map(&norm_sequence(), 1).unwrap();
    assert_eq!(d.source(), FgAbGroup::cyclic(2));
    assert!(d.is_isomorphism());
    let split = ShortExactSequence::new(
        triv(),
        GModule::trivial(sign().group().clone(), 2),
        triv(),
        IntMatrix::from_i64(&[&[1], &[0]]),
        IntMatrix::from_i64(&[&[0, 1]]),
    )
    .unwrap();
    for r in -2..=1 {
        assert!(connecting_map(&split, r).unwrap().is_zero());
    }
}

#[test]
fn long_exact_sequences() {
    for ses in [augmentation_sequence(), norm_sequence()] {
        for r in -3..=2 {
            assert!(long_exact_sequence(&ses, r).unwrap().all(), "degree {r}");
        }
    }
}

#[test]
fn bad_sequences_rejected() {
    let r = ShortExactSequence::new(
        triv(),
        regular(),
        sign(),
        IntMatrix::from_i64(&[&[2], &[2]]),
        IntMatrix::from_i64(&[&[1, -1]]),
    );
    assert!(matches!(r, Err(crate::Error::NotExactInput(_))));
}

#[test]
fn lemma21_examples() {
    let l = lemma21_sequence(&regular()).unwrap();
    assert!(l.h1.is_trivial() && l.exact && l.q.is_isomorphism());
    let l = lemma21_sequence(&sign()).unwrap();
    assert_eq!(l.h1, FgAbGroup::cyclic(2));
    assert_eq!(l.coinv_dual, FgAbGroup::cyclic(2));
    assert!(l.inv_dual.is_trivial());
    assert!(l.exact && l.norm_identity);
    let l = lemma21_sequence(&triv()).unwrap();
    assert!(l.h1.is_trivial() && l.q.is_isomorphism());
    let l = lemma21_sequence(&s3_perm()).unwrap();
    assert!(l.exact);
}
