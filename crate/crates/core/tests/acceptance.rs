//! Acceptance suite: one pass/fail line per criterion.
//!
//! Every comparison of groups is exact; the only tolerances are wall-clock limits.

use std::process::Command as Process;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use neron_core::cli::verify::{curated_norm_one_ses, SES_VARIANTS};
use neron_core::cli::{corpus_entry, run_properties, Config, VerifyOutcome};
use neron_core::localfield::{local_cohomology, LocalResult, ResidueFieldMode};
use neron_core::reductive::{abelian_cohomology, h1_reductive, RootDatumModel};
use neron_core::torus::{canonical_resolution, component_group, six_term};
use neron_core::FgAbGroup;

const SUITE_LIMIT: Duration = Duration::from_secs(120);
const END_TO_END_LIMIT: Duration = Duration::from_secs(300);
const MIN_RANDOM: usize = 200;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Runs properties on the default seeded corpus and requires zero failures.
fn suite(names: &[&str]) -> Result<(VerifyOutcome, Duration), String> {
    let start = Instant::now();
    let out = run_properties(&Config::default(), names).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.invalid.is_empty(), format!("{} instances failed to build", out.invalid.len()))?;
    ensure(out.random >= MIN_RANDOM, format!("only {} random instances", out.random))?;
    for r in &out.results {
        ensure(r.passed(), format!("{}: {} failures, first {:?}", r.name, r.failures, r.counterexamples.first()))?;
        ensure(r.checked > 0, format!("{}: nothing checked", r.name))?;
    }
    Ok((out, elapsed))
}

fn counts(out: &VerifyOutcome) -> String {
    out.results.iter().map(|r| format!("{} {}", r.name, r.checked)).collect::<Vec<_>>().join(", ")
}

fn criterion_1() -> Outcome {
    let (out, t) = suite(&["duality"])?;
    ensure(t < SUITE_LIMIT, format!("took {t:?}"))?;
    Ok(format!("{} instances ({} random), 0 failures, {:.1}s", out.results[0].checked, out.random, t.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let (out, t) = suite(&["lemma21"])?;
    Ok(format!("{}, 0 failures, {:.1}s", counts(&out), t.as_secs_f64()))
}

fn criterion_3() -> Outcome {
    let (out, _) = suite(&["component-group", "resolution"])?;
    let t = corpus_entry("norm-one-ramified-quadratic").unwrap().torus(512).map_err(|e| e.to_string())?;
    let c = component_group(&t).map_err(|e| e.to_string())?;
    ensure(c.structure == FgAbGroup::cyclic(2), format!("phi = {}", c.structure))?;
    let r = canonical_resolution(&t).map_err(|e| e.to_string())?;
    ensure(r.phi_p == FgAbGroup::free(1) && r.phi_q == FgAbGroup::free(1), "resolution terms are not Z, Z")?;
    let m = r.phi_pq.matrix();
    let two = BigInt::from(2);
    ensure(m.rows() == 1 && m.cols() == 1 && (m.get(0, 0) == &two || m.get(0, 0) == &-two), format!("map {m:?}"))?;
    ensure(r.phi_pq.cokernel() == FgAbGroup::cyclic(2) && r.checks_pass(), "resolution checks")?;
    ensure(r.intertwiner_equivariant, "intertwiner not equivariant")?;
    Ok(format!("{}; norm-one ramified: 0 -> Z -(x{})-> Z -> Z/2 -> 0", counts(&out), m.get(0, 0)))
}

fn criterion_4() -> Outcome {
    let (out, _) = suite(&["shapiro", "resolution-h1-q"])?;
    Ok(format!("{}, 0 failures", counts(&out)))
}

fn criterion_5() -> Outcome {
    let ses = curated_norm_one_ses(&Config::default()).map_err(|e| e.to_string())?;
    let r = six_term(&ses).map_err(|e| e.to_string())?;
    let orders: Vec<Option<BigInt>> = r.h2.iter().map(FgAbGroup::order).collect();
    let want: Vec<Option<BigInt>> = [1, 1, 2].iter().map(|&x| Some(BigInt::from(x))).collect();
    ensure(orders == want, format!("H^2 orders {orders:?}"))?;
    let phi = [FgAbGroup::cyclic(2), FgAbGroup::free(1), FgAbGroup::free(1)];
    ensure(r.phi == phi, format!("phi {:?}", r.phi))?;
    ensure(r.checks_pass(), "curated checks")?;
    ensure(SES_VARIANTS >= 20, "too few basis variants")?;
    let (out, _) = suite(&["six-term", "six-term-norm-one", "six-term-random-bases"])?;
    Ok(format!("H^2 orders 1, 1, 2; phi Z/2, Z, Z; {SES_VARIANTS} basis variants; {}", counts(&out)))
}

fn criterion_6() -> Outcome {
    let q = ResidueFieldMode::QuasiFinite;
    let gm = corpus_entry("gm").unwrap().torus(512).map_err(|e| e.to_string())?;
    let n1 = corpus_entry("norm-one-ramified-quadratic").unwrap().torus(512).map_err(|e| e.to_string())?;
    let h = |t, r| local_cohomology(t, q, r).map(|x| x.result).map_err(|e| e.to_string());
    ensure(matches!(h(&gm, 1)?, LocalResult::Group(g) if g.is_trivial()), "H^1(K, G_m) != 0")?;
    ensure(matches!(h(&gm, 2)?, LocalResult::Divisible(1)), "H^2(K, G_m) != Q/Z")?;
    ensure(matches!(h(&n1, 1)?, LocalResult::Group(g) if g == FgAbGroup::cyclic(2)), "H^1(K, R^1) != Z/2")?;
    let (out, _) = suite(&["local-classical", "local-vanishing"])?;
    Ok(format!("H^1(K,G_m) = 0, H^2(K,G_m) = Q/Z, H^1(K,R^1) = Z/2; {}", counts(&out)))
}

fn criterion_7() -> Outcome {
    let q = ResidueFieldMode::QuasiFinite;
    for n in 1..=5usize {
        let h1 = |rd: RootDatumModel| -> Result<FgAbGroup, String> {
            match h1_reductive(&rd, q).map_err(|e| e.to_string())?.result {
                LocalResult::Group(g) => Ok(g),
                other => Err(format!("{other:?}")),
            }
        };
        let sl = h1(RootDatumModel::split_sl(n).unwrap())?;
        ensure(sl.is_trivial(), format!("H^1(SL_{n}) = {sl}"))?;
        let pgl = h1(RootDatumModel::split_pgl(n).unwrap())?;
        let want = FgAbGroup::from_cyclic_orders(&[BigInt::from(n)]);
        ensure(pgl == want, format!("H^1(PGL_{n}) = {pgl}"))?;
        let gl = RootDatumModel::split_gl(n).unwrap();
        ensure(h1(gl.clone())?.is_trivial(), format!("H^1(GL_{n}) != 0"))?;
        let h2 = abelian_cohomology(&gl, q, 2).map_err(|e| e.to_string())?.result;
        ensure(matches!(h2, LocalResult::Divisible(1)), format!("H^2_ab(GL_{n}) = {h2:?}"))?;
    }
    let (out, _) = suite(&["reductive-split", "reductive-routes"])?;
    Ok(format!("SL_n -> 0, PGL_n -> Z/n, GL_n -> 0 and Q/Z for n <= 5; {}", counts(&out)))
}

fn criterion_8() -> Outcome {
    let (out, _) = suite(&["annihilation"])?;
    Ok(format!("{}, window {:?}", counts(&out), Config::default().window))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let out = Process::new(env!("CARGO_BIN_EXE_neron"))
        .args(["verify", "--seed", "0"])
        .output()
        .map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(out.status.code() == Some(0), format!("exit status {:?}", out.status.code()))?;
    ensure(t < END_TO_END_LIMIT, format!("took {t:?}"))?;
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let checks = report["checks"].as_array().map_or(0, Vec::len);
    Ok(format!("exit 0 in {:.1}s, {checks} property checks", t.as_secs_f64()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("duality", criterion_1),
        ("lemma21 sequence", criterion_2),
        ("component group and resolution", criterion_3),
        ("induced modules and H^1(J, X*(Q))", criterion_4),
        ("six-term sequence", criterion_5),
        ("classical local fields", criterion_6),
        ("reductive groups", criterion_7),
        ("annihilation", criterion_8),
        ("end-to-end verify", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {} [{name}]: PASS ({msg})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({msg})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
