use std::sync::Arc;

use super::*;
use crate::gmod::{close_group, induced_module};

fn group(n: usize, gens: &[&[&[i64]]]) -> Arc<FiniteMatrixGroup> {
    let g: Vec<(String, IntMatrix)> =
        gens.iter().enumerate().map(|(i, m)| (format!("g{i}"), IntMatrix::from_i64(m))).collect();
    Arc::new(close_group(n, &g, 512).unwrap())
}

fn qf_group(rd: &RootDatumModel, r: i32) -> FgAbGroup {
    match abelian_cohomology(rd, ResidueFieldMode::QuasiFinite, r).unwrap().result {
        LocalResult::Group(g) => g,
        LocalResult::Divisible(0) => FgAbGroup::trivial(),
        other => panic!("{other:?}"),
    }
}

#[test]
fn pi1_examples() {
    let t = RootDatumModel::split(2, vec![]).unwrap();
    assert_eq!(pi1(&t).structure(), FgAbGroup::free(2));
    assert!(pi1(&RootDatumModel::split(1, vec![vec![1], vec![-1]]).unwrap()).structure().is_trivial());
    assert_eq!(pi1(&RootDatumModel::split(1, vec![vec![2], vec![-2]]).unwrap()).structure(), FgAbGroup::cyclic(2));
    for n in 1..=5 {
        assert!(pi1(&RootDatumModel::split_sl(n).unwrap()).structure().is_trivial());
        assert_eq!(pi1(&RootDatumModel::split_pgl(n).unwrap()).structure(), FgAbGroup::from_cyclic_orders(&[n.into()]));
        assert_eq!(pi1(&RootDatumModel::split_gl(n).unwrap()).structure(), FgAbGroup::free(1));
    }
}

#[test]
fn unstable_coroots_rejected() {
    let g = group(2, &[&[&[0, 1], &[1, 0]]]);
    let m = GModule::tautological(g.clone());
    let roots = vec![vec![1.into(), 0.into()]];
    let e = RootDatumModel::new(m, roots, None, g.whole(), None).unwrap_err();
    assert_eq!(e, Error::CorootsNotStable);
}

#[test]
fn flasque_examples() {
    let s3 = group(3, &[&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]], &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]]);
    assert!(is_flasque(&induced_module(1, s3.clone())).unwrap());
    assert!(is_flasque(&induced_module(2, s3)).unwrap());
    let c2 = group(1, &[&[&[-1]]]);
    assert!(!is_flasque(&GModule::tautological(c2)).unwrap());
    let triv = Arc::new(FiniteMatrixGroup::trivial(3));
    assert!(is_flasque(&GModule::trivial(triv, 3)).unwrap());
}

#[test]
fn split_groups() {
    for n in 1..=5 {
        let sl = RootDatumModel::split_sl(n).unwrap();
        for r in 1..=4 {
            let rep = abelian_cohomology(&sl, ResidueFieldMode::QuasiFinite, r).unwrap();
            assert!(rep.result.is_zero());
        }
        let pgl = RootDatumModel::split_pgl(n).unwrap();
        let h = h1_reductive(&pgl, ResidueFieldMode::QuasiFinite).unwrap();
        assert!(h.routes_agree);
        assert_eq!(h.one_step.unwrap(), FgAbGroup::from_cyclic_orders(&[n.into()]));
        assert!(qf_group(&pgl, 2).is_trivial());
        let gl = RootDatumModel::split_gl(n).unwrap();
        assert!(h1_reductive(&gl, ResidueFieldMode::QuasiFinite).unwrap().one_step.unwrap().is_trivial());
        let r2 = abelian_cohomology(&gl, ResidueFieldMode::QuasiFinite, 2).unwrap().result;
        assert!(matches!(r2, LocalResult::Divisible(1)));
    }
    let gm = RootDatumModel::split(1, vec![]).unwrap();
    assert!(h1_reductive(&gm, ResidueFieldMode::QuasiFinite).unwrap().one_step.unwrap().is_trivial());
}

#[test]
fn twisted_forms() {
    // Unramified norm-one torus: pi_1 = Z with Frobenius acting by -1.
    let c2 = group(1, &[&[&[-1]]]);
    let m = GModule::tautological(c2.clone());
    let rd = RootDatumModel::new(m, vec![], None, c2.trivial_subgroup(), Some(1)).unwrap();
    let h = h1_reductive(&rd, ResidueFieldMode::QuasiFinite).unwrap();
    assert!(h.routes_agree);
    assert_eq!(h.one_step.unwrap(), FgAbGroup::cyclic(2));
    // Ramified PGL_2 form with the nontrivial automorphism: pi_1 = Z/2 still.
    let m = GModule::tautological(c2.clone());
    let roots = vec![vec![2.into()], vec![(-2).into()]];
    let rd = RootDatumModel::new(m, roots, None, c2.whole(), Some(0)).unwrap();
    let h = h1_reductive(&rd, ResidueFieldMode::QuasiFinite).unwrap();
    assert!(h.routes_agree);
    assert_eq!(h.one_step.unwrap(), FgAbGroup::cyclic(2));
    for r in 3..=4 {
        assert!(abelian_cohomology(&rd, ResidueFieldMode::QuasiFinite, r).unwrap().result.is_zero());
        assert!(abelian_cohomology(&rd, ResidueFieldMode::GenericCdLeq1, r).unwrap().result.is_zero());
    }
}
