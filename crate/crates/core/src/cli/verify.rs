//! Randomized verification over the builtin corpus and seeded random instances.
//!
//! Random instances are subgroups of signed permutation groups or of a few curated finite
//! subgroups of `GL_2(Z)`, conjugated by a random unimodular matrix. Instance `i` draws from a
//! ChaCha stream selected by `(seed, i)`, so results do not depend on the number of workers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::Config;
use super::corpus::{builtin_corpus, corpus_entry};
use super::input::{InputDocument, Word};
use super::report::Report;
use super::run::same_local_result;
use crate::error::{Error, Result};
use crate::gcoh::{induced_map, lemma21_sequence, tate, tate_via_complex, tate_with_cap};
use crate::gmod::{
    change_basis, close_group, dual_module, induced_module, invariants, restrict_action, FiniteMatrixGroup,
};
use crate::intlat::{AbHom, FgAbGroup, IntMatrix};
use crate::localfield::{local_cohomology, unipotent_cross_check, LocalResult, ResidueFieldMode};
use crate::reductive::{abelian_cohomology, h1_reductive, is_flasque, RootDatumModel};
use crate::torus::{
    canonical_resolution, cocharacters, component_group, component_sequence, norm_one_data, reduction_pieces,
    reduction_type, six_term, ReductionType, TorusModel, TorusSes,
};

/// Counterexamples kept per property.
const MAX_COUNTEREXAMPLES: usize = 3;
/// Random bases tried on the curated norm-one sequence.
pub const SES_VARIANTS: usize = 24;
/// Degree bound for the induced-module check and rank bound for random norm sequences.
const SHAPIRO_MAX_ORDER: usize = 8;
const NORM_SES_MAX_RANK: usize = 16;
const SPLIT_MAX_N: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

fn outcome(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

/// A parsed instance with whatever models its document describes.
pub struct Instance {
    pub doc: InputDocument,
    pub random: bool,
    pub torus: Option<TorusModel>,
    pub root_datum: Option<RootDatumModel>,
    pub ses: Option<TorusSes>,
}

impl Instance {
    pub fn new(doc: InputDocument, random: bool, config: &Config) -> Result<Self> {
        let m = config.max_group_order;
        let ses = doc.ses.as_ref().map(|_| doc.torus_ses(m)).transpose()?;
        let (torus, root_datum) = if doc.root_datum.is_some() {
            (None, Some(doc.root_datum(m)?))
        } else if ses.is_some() {
            (None, None)
        } else {
            (Some(doc.torus(m)?), Some(doc.root_datum(m)?))
        };
        Ok(Instance { doc, random, torus, root_datum, ses })
    }
}

type Check = fn(&Instance, &Config) -> Result<Outcome>;

pub struct Property {
    pub name: &'static str,
    /// Acceptance criterion the property belongs to, if any.
    pub criterion: Option<u8>,
    pub description: &'static str,
    check: Check,
}

pub fn properties() -> Vec<Property> {
    macro_rules! p {
        ($name:expr, $crit:expr, $desc:expr, $f:expr) => {
            Property { name: $name, criterion: $crit, description: $desc, check: $f }
        };
    }
    vec![
        p!("duality", Some(1), "H^r(J, M) = H^-r(J, M^v) for |r| <= 2", duality),
        p!("lemma21", Some(2), "0 -> H^1(J, M) -> (M^v)_J -> (M^J)^v -> 0 exact; M/M^J free without invariants", lemma21),
        p!("component-group", Some(3), "|phi(T)_tors| = |H^1(J, X*)|, rank phi(T) = rank X*^J", component),
        p!("resolution", Some(3), "canonical resolution checks, cokernel equals phi(T)", resolution),
        p!("resolution-h1-q", Some(4), "H^1(J, X*(Q)) = 0", resolution_h1_q),
        p!("shapiro", Some(4), "H^r(J, Z^d[Gamma]) = 0 in the window, d <= 2, |Gamma| <= 8", shapiro),
        p!("six-term", Some(5), "six-term sequence checks on sequences of tori", six_term_instance),
        p!("six-term-norm-one", Some(5), "0 -> R^(1) -> R -> T -> 0 six-term checks", six_term_norm_one),
        p!("six-term-random-bases", Some(5), "curated norm-one sequence in random bases", six_term_bases),
        p!("local-classical", Some(6), "H^1(K, G_m) = 0, H^2(K, G_m) = Q/Z, H^1(K, norm-one) = Z/2", local_classical),
        p!("local-vanishing", Some(6), "H^3(K, T) = H^4(K, T) = 0", local_vanishing),
        p!("unipotent-routes", Some(6), "unipotent T: phi(T) route equals H^1(J, X*)^D route", unipotent),
        p!("reductive-split", Some(7), "split SL_n, PGL_n, GL_n for n <= 5", reductive_split),
        p!("reductive-routes", Some(7), "two-step and one-step coinvariant torsion agree", reductive_routes),
        p!("annihilation", Some(8), "|J| kills H^r(J, X*) in the window", annihilation),
        p!("engine-agreement", None, "closed forms at r = 0, -1 agree with the complete complex", engine_agreement),
        p!("periodicity", None, "cyclic J: H^r = H^(r+2)", periodicity),
        p!("reduction-pieces", None, "reduction pieces free, sequences exact, type consistent", pieces),
        p!("functoriality", None, "maps induced by a change of basis compose to the identity", functoriality),
        p!("torus-as-root-datum", None, "H^r_ab of a torus equals H^r(K, T)", torus_as_root_datum),
        p!("flasque-dual-route", None, "H^1(H, X_*) = 0 for all H iff H^-1(H, X*) = 0 for all H", flasque_dual),
        p!("round-trip", None, "parse(print(doc)) = doc", round_trip),
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub criterion: Option<u8>,
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
    pub counterexamples: Vec<Value>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn to_value(&self) -> Value {
        json!({
            "name": self.name,
            "criterion": self.criterion,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": self.failures,
            "counterexamples": self.counterexamples,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub curated: usize,
    pub random: usize,
    pub results: Vec<PropertyResult>,
    /// Instances whose documents did not build, with the error.
    pub invalid: Vec<Value>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.invalid.is_empty() && self.results.iter().all(PropertyResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn signed_permutation(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = IntMatrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    m
}

/// Product of elementary matrices with entries `+-1`, a shuffle and sign changes.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut m = signed_permutation(rng, n);
    if n < 2 {
        return m;
    }
    for _ in 0..n + 2 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        m.add_row_multiple(i, j, &k);
    }
    m
}

fn curated_groups() -> Vec<Vec<IntMatrix>> {
    let m = IntMatrix::from_i64;
    vec![
        vec![m(&[&[0, -1], &[1, -1]])],
        vec![m(&[&[1, -1], &[1, 0]])],
        vec![m(&[&[0, -1], &[1, 0]])],
        vec![m(&[&[0, 1], &[1, 0]]), m(&[&[0, -1], &[1, -1]])],
        vec![m(&[&[1, -1], &[1, 0]]), m(&[&[0, 1], &[1, 0]])],
        vec![m(&[&[0, -1], &[1, 0]]), m(&[&[0, 1], &[1, 0]])],
        vec![m(&[&[0, 1], &[1, 0]]), m(&[&[-1, 0], &[0, -1]])],
    ]
}

fn block_sum(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    crate::gmod::block_diagonal(&[a.clone(), b.clone()])
}

/// Generators of a random finite subgroup of `GL_n(Z)` of order at most the bound.
fn random_generators(rng: &mut ChaCha8Rng, config: &Config) -> (usize, Vec<IntMatrix>) {
    let max_rank = config.random_max_rank;
    for _ in 0..64 {
        let (n, gens) = if max_rank >= 2 && rng.gen_bool(0.3) {
            let curated = curated_groups();
            let base = curated[rng.gen_range(0..curated.len())].clone();
            let extra = rng.gen_range(0..=(max_rank - 2).min(3));
            if extra == 0 {
                (2, base)
            } else {
                let gens = base.iter().map(|g| block_sum(g, &signed_permutation(rng, extra))).collect();
                (2 + extra, gens)
            }
        } else {
            let n = rng.gen_range(1..=max_rank);
            let k = rng.gen_range(1..=2);
            (n, (0..k).map(|_| signed_permutation(rng, n)).collect())
        };
        let named: Vec<(String, IntMatrix)> = gens.iter().cloned().enumerate().map(|(i, g)| (format!("g{i}"), g)).collect();
        if close_group(n, &named, config.random_max_group_order).is_ok() {
            return (n, gens);
        }
    }
    // A single signed permutation of rank <= 5 has order at most 12.
    let n = rng.gen_range(1..=max_rank.min(5));
    let g = signed_permutation(rng, n);
    let ok = close_group(n, &[("g0".into(), g.clone())], config.random_max_group_order).is_ok();
    (n, if ok { vec![g] } else { Vec::new() })
}

fn element_word(g: &FiniteMatrixGroup, x: usize) -> Word {
    let names = g.generator_names();
    let tree = g.spanning_tree();
    let mut letters = Vec::new();
    let mut cur = x;
    while cur != 0 {
        let (parent, gen) = tree[cur];
        letters.push((names[gen].clone(), 1));
        cur = parent;
    }
    letters.reverse();
    Word::from_letters(letters)
}

/// Random `(Gamma, J, X*)` document.
pub fn random_document(config: &Config, index: usize) -> Result<InputDocument> {
    let mut rng = rng_for(config.seed, index);
    let (n, gens) = random_generators(&mut rng, config);
    let p = random_unimodular(&mut rng, n);
    let pinv = p.unimodular_inverse()?;
    let generators: Vec<(String, IntMatrix)> =
        gens.iter().enumerate().map(|(i, g)| (format!("g{i}"), &(&pinv * g) * &p)).collect();
    let group = close_group(n, &generators, config.random_max_group_order)?;
    let normal: Vec<_> = group.subgroups().iter().filter(|h| h.is_normal).cloned().collect();
    let quotient_generator = |h: &crate::gmod::SubgroupHandle| -> Option<usize> {
        (0..group.order()).find(|&x| {
            let mut gens = h.generators.clone();
            gens.push(x);
            group.closure(&gens).len() == group.order()
        })
    };
    let cyclic: Vec<_> = normal.iter().filter(|h| quotient_generator(h).is_some()).collect();
    let j = if !cyclic.is_empty() && rng.gen_bool(0.85) {
        cyclic[rng.gen_range(0..cyclic.len())].clone()
    } else {
        normal[rng.gen_range(0..normal.len())].clone()
    };
    let frobenius = quotient_generator(&j).map(|x| element_word(&group, x));
    Ok(InputDocument {
        name: format!("random-{}-{index}", config.seed),
        rank: n,
        generators,
        inertia: j.generators.iter().map(|&x| element_word(&group, x)).collect(),
        frobenius,
        ses: None,
        root_datum: None,
        options: Default::default(),
    })
}

macro_rules! torus_or_skip {
    ($inst:expr) => {
        match $inst.torus.as_ref() {
            Some(t) => t,
            None => return Ok(Outcome::Skip),
        }
    };
}

fn duality(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let m = t.inertia_module();
    let d = dual_module(&m);
    for r in -2..=2 {
        let a = tate(&m, r)?.group;
        let b = tate(&d, -r)?.group;
        if a != b {
            return Ok(Outcome::Fail(format!("H^{r}(J, M) = {a} but H^{}(J, M^v) = {b}", -r)));
        }
    }
    Ok(Outcome::Pass)
}

fn lemma21(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let l = lemma21_sequence(&t.inertia_module())?;
    if !(l.exact && l.kernel.order() == l.h1.order() && l.norm_identity) {
        return Ok(Outcome::Fail(format!(
            "exact {}, ker q = {}, H^1 = {}, norm identity {}",
            l.exact, l.kernel, l.h1, l.norm_identity
        )));
    }
    let p = reduction_pieces(t)?;
    if p.unip_sub.rank() > 0 {
        let free = p.unip_sub.structure().is_free();
        let inv = invariants(&p.unip_sub, t.inertia())?.inclusion.cols();
        if !free || inv != 0 {
            return Ok(Outcome::Fail(format!("M/M^J free {free}, rank of its invariants {inv}")));
        }
    }
    Ok(Outcome::Pass)
}

fn component(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let c = component_group(t)?;
    let s = component_sequence(t)?;
    Ok(outcome(c.checks_pass() && s.exact && s.kernel_order_matches, || {
        format!("phi(T) = {}, H^1(J, X*) = {}, rank X*^J = {}, sequence exact {}", c.structure, c.h1, c.invariant_rank, s.exact)
    }))
}

fn resolution(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let r = canonical_resolution(t)?;
    Ok(outcome(r.checks_pass(), || {
        format!(
            "sequence exact {}, P multiplicative {}, phi exact {}, coinvariants exact {}, matches {}, equivariant {}",
            r.character_sequence_exact,
            r.p_multiplicative,
            r.phi_sequence_exact,
            r.coinvariant_sequence_exact,
            r.matches_component_group,
            r.intertwiner_equivariant
        )
    }))
}

fn resolution_h1_q(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let r = canonical_resolution(t)?;
    // Recomputed rather than read off the report.
    let h = tate(&r.q.inertia_module(), 1)?.group;
    Ok(outcome(h.is_trivial() && r.h1_q_vanishes, || format!("H^1(J, X*(Q)) = {h}")))
}

fn shapiro(inst: &Instance, config: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let g = t.galois();
    if g.order() > SHAPIRO_MAX_ORDER {
        return Ok(Outcome::Skip);
    }
    for d in 1..=2 {
        let m = restrict_action(&induced_module(d, g.clone()), t.inertia());
        for r in config.degrees() {
            let h = tate_with_cap(&m, r, config.degree_cap())?.group;
            if !h.is_trivial() {
                return Ok(Outcome::Fail(format!("H^{r}(J, Z^{d}[Gamma]) = {h}")));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn six_term_report(ses: &TorusSes) -> Result<Outcome> {
    let r = six_term(ses)?;
    Ok(outcome(r.checks_pass(), || {
        format!(
            "right exact {}, bookkeeping {}, H^2 exact {}, torsion-free injective {:?}",
            r.right_exact, r.order_bookkeeping, r.h2_exact, r.torsion_free_injective
        )
    }))
}

fn six_term_instance(inst: &Instance, _: &Config) -> Result<Outcome> {
    match &inst.ses {
        Some(s) => six_term_report(s),
        None => Ok(Outcome::Skip),
    }
}

fn six_term_norm_one(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    if t.rank() * t.galois().order() > NORM_SES_MAX_RANK {
        return Ok(Outcome::Skip);
    }
    let no = norm_one_data(t)?;
    let ses = TorusSes::new(no.torus, no.restriction, t.clone(), no.unit, no.projection)?;
    six_term_report(&ses)
}

/// `(H^2 orders, phi)` of a sequence together with its checks.
fn six_term_shape(ses: &TorusSes) -> Result<(Vec<Option<BigInt>>, Vec<FgAbGroup>, bool)> {
    let r = six_term(ses)?;
    Ok((r.h2.iter().map(FgAbGroup::order).collect(), r.phi.to_vec(), r.checks_pass()))
}

fn rebased(ses: &TorusSes, rng: &mut ChaCha8Rng) -> Result<TorusSes> {
    let p: Vec<IntMatrix> = [&ses.t1, &ses.t2, &ses.t3].iter().map(|t| random_unimodular(rng, t.rank())).collect();
    let inv: Vec<IntMatrix> = p.iter().map(IntMatrix::unimodular_inverse).collect::<Result<_>>()?;
    let t = |m: &TorusModel, p: &IntMatrix| -> Result<TorusModel> { m.with_module(change_basis(m.char_module(), p)?) };
    TorusSes::new(
        t(&ses.t1, &p[0])?,
        t(&ses.t2, &p[1])?,
        t(&ses.t3, &p[2])?,
        &(&inv[1] * &ses.f) * &p[2],
        &(&inv[0] * &ses.g) * &p[1],
    )
}

fn six_term_bases(inst: &Instance, config: &Config) -> Result<Outcome> {
    if inst.doc.name != "norm-one-ses-ramified-quadratic" {
        return Ok(Outcome::Skip);
    }
    let ses = inst.ses.as_ref().ok_or_else(|| Error::Inconsistent("curated sequence missing".into()))?;
    let expected = (
        vec![Some(BigInt::one()), Some(BigInt::one()), Some(BigInt::from(2))],
        vec![FgAbGroup::cyclic(2), FgAbGroup::free(1), FgAbGroup::free(1)],
        true,
    );
    let base = six_term_shape(ses)?;
    if base != expected {
        return Ok(Outcome::Fail(format!("curated sequence gives {base:?}")));
    }
    let mut rng = rng_for(config.seed, usize::MAX);
    for k in 0..SES_VARIANTS {
        let v = six_term_shape(&rebased(ses, &mut rng)?)?;
        if v != expected {
            return Ok(Outcome::Fail(format!("basis variant {k} gives {v:?}")));
        }
    }
    Ok(Outcome::Pass)
}

fn local_classical(inst: &Instance, _: &Config) -> Result<Outcome> {
    let cases: Vec<(i32, LocalResult)> = match inst.doc.name.as_str() {
        "gm" => vec![(1, LocalResult::Group(FgAbGroup::trivial())), (2, LocalResult::Divisible(1))],
        "norm-one-ramified-quadratic" => vec![(1, LocalResult::Group(FgAbGroup::cyclic(2)))],
        _ => return Ok(Outcome::Skip),
    };
    let t = torus_or_skip!(inst);
    for (r, want) in cases {
        let got = local_cohomology(t, ResidueFieldMode::QuasiFinite, r)?.result;
        if !same_local_result(&got, &want) {
            return Ok(Outcome::Fail(format!("H^{r}(K, T) = {got:?}, expected {want:?}")));
        }
    }
    Ok(Outcome::Pass)
}

fn local_vanishing(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let mut modes = vec![ResidueFieldMode::GenericCdLeq1];
    if t.frobenius().is_some() {
        modes.push(ResidueFieldMode::QuasiFinite);
    }
    for mode in modes {
        for r in [3, 4] {
            let res = local_cohomology(t, mode, r)?.result;
            if !res.is_zero() {
                return Ok(Outcome::Fail(format!("{mode:?}: H^{r}(K, T) = {res:?}")));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn unipotent(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    if reduction_type(t)? != ReductionType::Unipotent {
        return Ok(Outcome::Skip);
    }
    let mut modes = vec![ResidueFieldMode::GenericCdLeq1];
    if t.frobenius().is_some() {
        modes.push(ResidueFieldMode::QuasiFinite);
    }
    for mode in modes {
        let u = unipotent_cross_check(t, mode)?;
        if !u.passed() {
            return Ok(Outcome::Fail(format!(
                "{mode:?}: {:?} via phi(T), {:?} via H^1(J, X*)^D, H^2 vanishes {}",
                u.via_components, u.via_h1_dual, u.degree_two_vanishes
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn reductive_split(inst: &Instance, _: &Config) -> Result<Outcome> {
    if inst.doc.name != "gm" {
        return Ok(Outcome::Skip);
    }
    let q = ResidueFieldMode::QuasiFinite;
    for n in 1..=SPLIT_MAX_N {
        let cases = [
            ("SL", RootDatumModel::split_sl(n)?, FgAbGroup::trivial(), LocalResult::Group(FgAbGroup::trivial())),
            ("PGL", RootDatumModel::split_pgl(n)?, FgAbGroup::from_cyclic_orders(&[BigInt::from(n)]), LocalResult::Group(FgAbGroup::trivial())),
            ("GL", RootDatumModel::split_gl(n)?, FgAbGroup::trivial(), LocalResult::Divisible(1)),
        ];
        for (name, rd, h1, h2) in cases {
            let h = h1_reductive(&rd, q)?;
            let ok1 = matches!(&h.result, LocalResult::Group(g) if *g == h1) && h.routes_agree;
            let got2 = abelian_cohomology(&rd, q, 2)?.result;
            if !ok1 || !same_local_result(&got2, &h2) {
                return Ok(Outcome::Fail(format!("split {name}_{n}: H^1 = {:?}, H^2_ab = {got2:?}", h.result)));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn reductive_routes(inst: &Instance, _: &Config) -> Result<Outcome> {
    let Some(rd) = &inst.root_datum else { return Ok(Outcome::Skip) };
    if rd.frobenius().is_none() {
        return Ok(Outcome::Skip);
    }
    let h = h1_reductive(rd, ResidueFieldMode::QuasiFinite)?;
    Ok(outcome(h.routes_agree, || format!("one step {:?}, two step {:?}", h.one_step, h.two_step)))
}

fn annihilation(inst: &Instance, config: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let m = t.inertia_module();
    let order = BigInt::from(t.inertia().order());
    for r in config.degrees() {
        let h = tate_with_cap(&m, r, config.degree_cap())?.group;
        if h.rank != 0 || h.invariant_factors.iter().any(|d| !(&order % d).is_zero()) {
            return Ok(Outcome::Fail(format!("H^{r}(J, X*) = {h} with |J| = {order}")));
        }
    }
    Ok(Outcome::Pass)
}

fn engine_agreement(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let m = t.inertia_module();
    for r in [-1, 0] {
        let a = tate(&m, r)?.group;
        let b = tate_via_complex(&m, r)?.group;
        if a != b {
            return Ok(Outcome::Fail(format!("H^{r}: closed form {a}, complex {b}")));
        }
    }
    Ok(Outcome::Pass)
}

fn periodicity(inst: &Instance, config: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let m = t.inertia_module();
    let g = m.group();
    if !(0..g.order()).any(|x| g.element_order(x) == g.order()) {
        return Ok(Outcome::Skip);
    }
    let cap = config.degree_cap();
    let groups: HashMap<i32, FgAbGroup> =
        config.degrees().map(|r| Ok((r, tate_with_cap(&m, r, cap)?.group))).collect::<Result<_>>()?;
    for r in config.degrees() {
        if let (Some(a), Some(b)) = (groups.get(&r), groups.get(&(r + 2))) {
            if a != b {
                return Ok(Outcome::Fail(format!("H^{r} = {a}, H^{} = {b}", r + 2)));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn pieces(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let p = reduction_pieces(t)?;
    let ty = reduction_type(t)?;
    let consistent = match ty {
        ReductionType::Multiplicative => p.unip_sub.rank() == 0,
        ReductionType::Unipotent => p.mult_quot.rank() == 0,
        ReductionType::Mixed => p.unip_sub.rank() > 0 && p.mult_quot.rank() > 0,
    };
    Ok(outcome(p.all_free && p.invariant_sequence_exact && p.norm_sequence_exact && consistent, || {
        format!(
            "free {}, invariant sequence {}, norm sequence {}, {ty} consistent {consistent}",
            p.all_free, p.invariant_sequence_exact, p.norm_sequence_exact
        )
    }))
}

fn functoriality(inst: &Instance, config: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let m = t.inertia_module();
    let mut rng = rng_for(config.seed ^ 0x5eed, inst.doc.rank + 31 * t.galois().order());
    let p = random_unimodular(&mut rng, m.rank());
    let pinv = p.unimodular_inverse()?;
    let m2 = change_basis(&m, &p)?;
    for r in [-1, 0, 1, 2] {
        let there = induced_map(&m, &m2, &pinv, r)?;
        let back = induced_map(&m2, &m, &p, r)?;
        let id = induced_map(&m, &m, &IntMatrix::identity(m.rank()), r)?;
        let round = there.then(&back)?;
        let identity = AbHom::identity(id.source_orders().to_vec());
        if id != identity || round != identity || !there.is_isomorphism() {
            return Ok(Outcome::Fail(format!("degree {r}: round trip {round:?}")));
        }
    }
    Ok(Outcome::Pass)
}

fn torus_as_root_datum(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let rd = inst.root_datum.as_ref().ok_or_else(|| Error::Inconsistent("torus without root datum".into()))?;
    let mut modes = vec![ResidueFieldMode::GenericCdLeq1];
    if t.frobenius().is_some() {
        modes.push(ResidueFieldMode::QuasiFinite);
    }
    for mode in modes {
        for r in 1..=3 {
            let a = local_cohomology(t, mode, r)?.result;
            let b = abelian_cohomology(rd, mode, r)?.result;
            if !same_local_result(&a, &b) {
                return Ok(Outcome::Fail(format!("{mode:?}, degree {r}: {a:?} vs {b:?}")));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn flasque_dual(inst: &Instance, _: &Config) -> Result<Outcome> {
    let t = torus_or_skip!(inst);
    let cochar = cocharacters(t);
    let f = is_flasque(&cochar)?;
    let mut g = true;
    for h in t.galois().subgroups() {
        if !tate(&restrict_action(t.char_module(), h), -1)?.group.is_trivial() {
            g = false;
            break;
        }
    }
    Ok(outcome(f == g, || format!("via H^1: {f}, via H^-1: {g}")))
}

fn round_trip(inst: &Instance, _: &Config) -> Result<Outcome> {
    let v = inst.doc.to_value();
    let back = InputDocument::from_value(&v)?;
    let text = serde_json::to_string(&v).expect("document serializes");
    let reparsed = InputDocument::from_json_str(&text)?;
    Ok(outcome(back == inst.doc && reparsed == inst.doc, || "normalized document does not round-trip".into()))
}

/// Curated documents followed by `corpus_size` random ones.
pub fn documents(config: &Config) -> Result<Vec<(InputDocument, bool)>> {
    let mut docs: Vec<(InputDocument, bool)> = builtin_corpus().into_iter().map(|d| (d, false)).collect();
    let random: Vec<InputDocument> =
        (0..config.corpus_size).into_par_iter().map(|i| random_document(config, i)).collect::<Result<_>>()?;
    docs.extend(random.into_iter().map(|d| (d, true)));
    Ok(docs)
}

/// Runs the named properties (all of them when `only` is empty).
pub fn run_properties(config: &Config, only: &[&str]) -> Result<VerifyOutcome> {
    config.validate()?;
    let props: Vec<Property> = properties().into_iter().filter(|p| only.is_empty() || only.contains(&p.name)).collect();
    if let Some(bad) = only.iter().find(|n| !properties().iter().any(|p| p.name == **n)) {
        return Err(Error::schema("property", format!("unknown property '{bad}'")));
    }
    let docs = documents(config)?;
    let curated = docs.iter().filter(|d| !d.1).count();
    let built: Vec<std::result::Result<Instance, Value>> = docs
        .into_par_iter()
        .map(|(doc, random)| {
            let v = doc.to_value();
            Instance::new(doc, random, config).map_err(|e| json!({ "document": v, "error": e.to_string() }))
        })
        .collect();
    let mut instances = Vec::new();
    let mut invalid = Vec::new();
    for b in built {
        match b {
            Ok(i) => instances.push(i),
            Err(v) => invalid.push(v),
        }
    }
    let random = instances.iter().filter(|i| i.random).count();
    let outcomes: Vec<Vec<Outcome>> = instances
        .par_iter()
        .map(|inst| {
            props
                .iter()
                .map(|p| (p.check)(inst, config).unwrap_or_else(|e| Outcome::Fail(format!("error: {e}"))))
                .collect()
        })
        .collect();
    let results = props
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut r = PropertyResult {
                name: p.name,
                criterion: p.criterion,
                checked: 0,
                skipped: 0,
                failures: 0,
                counterexamples: Vec::new(),
            };
            for (inst, o) in instances.iter().zip(&outcomes) {
                match &o[k] {
                    Outcome::Pass => r.checked += 1,
                    Outcome::Skip => r.skipped += 1,
                    Outcome::Fail(detail) => {
                        r.checked += 1;
                        r.failures += 1;
                        if r.counterexamples.len() < MAX_COUNTEREXAMPLES {
                            r.counterexamples.push(json!({
                                "instance": inst.doc.name,
                                "detail": detail,
                                "document": inst.doc.to_value(),
                            }));
                        }
                    }
                }
            }
            r
        })
        .collect();
    Ok(VerifyOutcome { curated, random, results, invalid })
}

pub fn verify(config: &Config) -> Result<Report> {
    let out = run_properties(config, &[])?;
    let mut report = Report::new("verify", None);
    report.results = json!({
        "seed": config.seed,
        "corpus_size": config.corpus_size,
        "window": config.window,
        "instances": { "curated": out.curated, "random": out.random },
        "invalid_instances": out.invalid,
        "properties": out.results.iter().map(PropertyResult::to_value).collect::<Vec<_>>(),
    });
    report.check(
        "instances-valid",
        out.invalid.is_empty(),
        format!("{} documents failed to build", out.invalid.len()),
    );
    let descriptions: HashMap<&str, &str> = properties().iter().map(|p| (p.name, p.description)).collect();
    for r in &out.results {
        report.check(
            r.name,
            r.passed(),
            format!(
                "{}: checked {}, skipped {}, failed {}",
                descriptions[r.name], r.checked, r.skipped, r.failures
            ),
        );
    }
    Ok(report)
}

/// The curated norm-one sequence, for callers outside the verifier.
pub fn curated_norm_one_ses(config: &Config) -> Result<TorusSes> {
    corpus_entry("norm-one-ses-ramified-quadratic")
        .ok_or_else(|| Error::Inconsistent("curated sequence missing".into()))?
        .torus_ses(config.max_group_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Config {
        Config { corpus_size: 12, ..Config::default() }
    }

    #[test]
    fn random_documents_are_deterministic_and_valid() {
        let c = small();
        for i in 0..c.corpus_size {
            let a = random_document(&c, i).unwrap();
            assert_eq!(a, random_document(&c, i).unwrap());
            let t = a.torus(c.max_group_order).unwrap();
            assert!(t.galois().order() <= c.random_max_group_order);
            assert!(t.rank() <= c.random_max_rank);
        }
    }

    #[test]
    fn random_unimodular_is_unimodular() {
        let mut rng = rng_for(3, 4);
        for n in 1..6 {
            assert!(random_unimodular(&mut rng, n).is_unimodular());
        }
    }

    #[test]
    fn small_run_passes() {
        let out = run_properties(&small(), &[]).unwrap();
        for r in &out.results {
            assert!(r.passed(), "{r:?}");
        }
        assert!(out.invalid.is_empty(), "{:?}", out.invalid);
    }

    #[test]
    fn curated_only_run_passes() {
        let c = Config { corpus_size: 0, ..Config::default() };
        let out = run_properties(&c, &[]).unwrap();
        assert_eq!(out.random, 0);
        assert!(out.passed());
    }

    #[test]
    fn trivial_group_bound() {
        let c = Config { corpus_size: 8, random_max_group_order: 1, ..Config::default() };
        let out = run_properties(&c, &["annihilation", "duality"]).unwrap();
        assert!(out.passed());
        for i in 0..8 {
            let d = random_document(&c, i).unwrap();
            assert_eq!(d.torus(512).unwrap().galois().order(), 1);
        }
    }
}
