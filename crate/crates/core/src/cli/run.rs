//! Command dispatch.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Value};

use super::config::Config;
use super::corpus::{builtin_corpus, corpus_entry};
use super::input::{mode_value, InputDocument};
use super::report::{group_value, hom_value, local_result_value, module_value, Report};
use super::verify::verify;
use crate::error::{Error, Result};
use crate::gcoh::tate;
use crate::gmod::{dual_module, restrict_action, GModule};
use crate::json::matrix_value;
use crate::localfield::{local_cohomology, unipotent_cross_check, LocalResult, ResidueFieldMode};
use crate::reductive::{abelian_cohomology, h1_reductive, is_flasque};
use crate::torus::{
    canonical_resolution, cocharacters, component_group, component_sequence, reduction_pieces, reduction_type,
    six_term, ReductionType,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    ComponentGroup,
    ReductionType,
    Resolve,
    SixTerm,
    LocalCohomology,
    ReductiveH1,
    AbelianCohomology,
    IsFlasque,
    Verify,
    Corpus,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::ComponentGroup,
        Command::ReductionType,
        Command::Resolve,
        Command::SixTerm,
        Command::LocalCohomology,
        Command::ReductiveH1,
        Command::AbelianCohomology,
        Command::IsFlasque,
        Command::Verify,
        Command::Corpus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::ComponentGroup => "component-group",
            Command::ReductionType => "reduction-type",
            Command::Resolve => "resolve",
            Command::SixTerm => "six-term",
            Command::LocalCohomology => "local-cohomology",
            Command::ReductiveH1 => "reductive-h1",
            Command::AbelianCohomology => "abelian-cohomology",
            Command::IsFlasque => "is-flasque",
            Command::Verify => "verify",
            Command::Corpus => "corpus",
        }
    }

    pub fn needs_input(self) -> bool {
        !matches!(self, Command::Verify | Command::Corpus)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::schema("command", format!("unknown command '{s}'")))
    }
}

/// `quasi-finite`, `generic`, or `cd=N`.
pub fn parse_mode(s: &str) -> Result<ResidueFieldMode> {
    match s {
        "quasi-finite" => Ok(ResidueFieldMode::QuasiFinite),
        "generic" => Ok(ResidueFieldMode::GenericCdLeq1),
        _ => s
            .strip_prefix("cd=")
            .and_then(|n| n.parse().ok())
            .map(ResidueFieldMode::CdN)
            .ok_or_else(|| Error::schema("mode", format!("unknown mode '{s}'"))),
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Overrides `options.degree` in the document.
    pub degree: Option<i32>,
    /// Overrides `options.mode` in the document.
    pub mode: Option<ResidueFieldMode>,
    /// `corpus`: print this entry only.
    pub name: Option<String>,
    pub timing: bool,
}

pub fn run(command: Command, doc: Option<&InputDocument>, config: &Config, opts: &RunOptions) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let mut report = match (command, doc) {
        (Command::Verify, _) => verify(config)?,
        (Command::Corpus, _) => corpus(opts)?,
        (_, None) => return Err(Error::schema("$", format!("command '{command}' needs an input document"))),
        (_, Some(doc)) => {
            let mut report = Report::new(command.name(), Some(doc.to_value()));
            let degree = opts.degree.or(doc.options.degree);
            let mode = opts.mode.or(doc.options.mode).unwrap_or(ResidueFieldMode::QuasiFinite);
            let m = config.max_group_order;
            match command {
                Command::ComponentGroup => run_component_group(&mut report, doc, m)?,
                Command::ReductionType => run_reduction_type(&mut report, doc, m)?,
                Command::Resolve => run_resolve(&mut report, doc, m)?,
                Command::SixTerm => run_six_term(&mut report, doc, m)?,
                Command::LocalCohomology => run_local(&mut report, doc, m, mode, degree.unwrap_or(1))?,
                Command::ReductiveH1 => run_reductive_h1(&mut report, doc, m, mode)?,
                Command::AbelianCohomology => run_abelian(&mut report, doc, m, mode, degree.unwrap_or(1))?,
                Command::IsFlasque => run_is_flasque(&mut report, doc, m)?,
                Command::Verify | Command::Corpus => unreachable!("handled above"),
            }
            report
        }
    };
    if opts.timing {
        report.timing = Some(json!({ "elapsed_ms": start.elapsed().as_millis() as u64 }));
    }
    Ok(report)
}

fn record_component_checks(report: &mut Report, t: &crate::torus::TorusModel) -> Result<()> {
    let c = component_group(t)?;
    report.check(
        "torsion-equals-h1-inertia",
        c.torsion_matches_h1,
        format!("phi(T)_tors = {}, H^1(J, X*) = {}", c.torsion_part, c.h1),
    );
    report.check(
        "free-rank-equals-invariant-rank",
        c.free_rank_matches,
        format!("rank phi(T) = {}, rank X*^J = {}", c.free_rank, c.invariant_rank),
    );
    let s = component_sequence(t)?;
    report.check(
        "component-sequence-exact",
        s.exact && s.kernel_order_matches,
        format!(
            "0 -> H^1(J, X*)^D -> phi(T) -> (X*^J)^v -> 0: surjective {}, kernel {} vs {}",
            s.surjective,
            s.q.kernel(),
            s.tors
        ),
    );
    report.check("norm-pairing-identity", s.norm_identity, "<N lambda, chi> = |J| <lambda, chi> on X*^J");
    Ok(())
}

fn run_component_group(report: &mut Report, doc: &InputDocument, max: usize) -> Result<()> {
    let t = doc.torus(max)?;
    let c = component_group(&t)?;
    report.results = json!({
        "component_group": group_value(&c.structure),
        "torsion": group_value(&c.torsion_part),
        "free_rank": c.free_rank,
        "h1_inertia": group_value(&c.h1),
        "invariant_rank": c.invariant_rank,
        "residual_action": module_value(&c.module),
    });
    record_component_checks(report, &t)
}

fn run_reduction_type(report: &mut Report, doc: &InputDocument, max: usize) -> Result<()> {
    let t = doc.torus(max)?;
    let ty = reduction_type(&t)?;
    let p = reduction_pieces(&t)?;
    report.results = json!({
        "reduction_type": ty.to_string(),
        "rank": t.rank(),
        "invariant_rank": p.mult_quot.rank(),
        "norm_image_rank": p.mult_sub.rank(),
        "invariant_quotient_rank": p.unip_sub.rank(),
        "norm_kernel_rank": p.unip_quot.rank(),
    });
    report.check("pieces-free", p.all_free, "all four pieces are Z-free");
    report.check("invariant-sequence-exact", p.invariant_sequence_exact, "0 -> X*^J -> X* -> X*/X*^J -> 0");
    report.check("norm-sequence-exact", p.norm_sequence_exact, "0 -> ker N -> X* -> N X* -> 0");
    let expected = if t.char_module().acts_trivially_on(t.inertia()) {
        ReductionType::Multiplicative
    } else if p.mult_quot.rank() == 0 {
        ReductionType::Unipotent
    } else {
        ReductionType::Mixed
    };
    report.check(
        "type-matches-pieces",
        expected == ty,
        format!("from the pieces: {expected}, classified: {ty}"),
    );
    Ok(())
}

fn run_resolve(report: &mut Report, doc: &InputDocument, max: usize) -> Result<()> {
    let t = doc.torus(max)?;
    let r = canonical_resolution(&t)?;
    report.results = json!({
        "p_rank": r.p.rank(),
        "q_rank": r.q.rank(),
        "phi_p": group_value(&r.phi_p),
        "phi_q": group_value(&r.phi_q),
        "phi_t": group_value(&r.phi_t),
        "phi_pq": hom_value(&r.phi_pq),
        "phi_qt": hom_value(&r.phi_qt),
        "char_u": matrix_value(&r.char_u),
        "char_v": matrix_value(&r.char_v),
        "cokernel": group_value(&r.phi_pq.cokernel()),
    });
    report.check("character-sequence-exact", r.character_sequence_exact, "0 -> X*(T) -> X*(Q) -> X*(P) -> 0");
    report.check("p-multiplicative", r.p_multiplicative, "inertia acts trivially on X*(P)");
    report.check("h1-q-vanishes", r.h1_q_vanishes, "H^1(J, X*(Q)) = 0");
    report.check("phi-sequence-exact", r.phi_sequence_exact, "0 -> phi(P) -> phi(Q) -> phi(T) -> 0");
    report.check(
        "coinvariant-sequence-exact",
        r.coinvariant_sequence_exact,
        "0 -> X_*(P) -> X_*(Q)_J -> X_*(T)_J -> 0 with X_*(P)_J = X_*(P)",
    );
    report.check(
        "cokernel-matches-component-group",
        r.matches_component_group,
        format!("coker(phi(P) -> phi(Q)) = {}", r.phi_pq.cokernel()),
    );
    report.check("intertwiner-equivariant", r.intertwiner_equivariant, "X_*(Q) -> X_*(T) is Galois-equivariant");
    record_component_checks(report, &t)
}

fn run_six_term(report: &mut Report, doc: &InputDocument, max: usize) -> Result<()> {
    let ses = doc.torus_ses(max)?;
    let r = six_term(&ses)?;
    report.results = json!({
        "h2_inertia": r.h2.iter().map(group_value).collect::<Vec<_>>(),
        "phi": r.phi.iter().map(group_value).collect::<Vec<_>>(),
        "phi_12": hom_value(&r.phi_12),
        "phi_23": hom_value(&r.phi_23),
        "h2_32": hom_value(&r.h2_32),
        "h2_21": hom_value(&r.h2_21),
    });
    report.check("phi-right-exact", r.right_exact, "phi(T1) -> phi(T2) -> phi(T3) -> 0");
    report.check(
        "kernel-order-bookkeeping",
        r.order_bookkeeping,
        format!("|ker(phi(T1) -> phi(T2))| = {}, |ker(H^2(T3) -> H^2(T2))| = {}", r.phi_12.kernel(), r.h2_32.kernel()),
    );
    report.check("h2-exact", r.h2_exact, "H^2(J, X*(T3)) -> H^2(J, X*(T2)) -> H^2(J, X*(T1))");
    if let Some(inj) = r.torsion_free_injective {
        report.check("torsion-free-injective", inj, "phi(T1) torsion-free, so phi(T1) -> phi(T2) is injective");
    }
    Ok(())
}

fn run_local(report: &mut Report, doc: &InputDocument, max: usize, mode: ResidueFieldMode, r: i32) -> Result<()> {
    let t = doc.torus(max)?;
    let res = local_cohomology(&t, mode, r)?;
    report.results = json!({
        "degree": r,
        "mode": mode_value(mode),
        "cohomology": local_result_value(&res.result),
    });
    record_component_checks(report, &t)?;
    if r >= 3 && !matches!(mode, ResidueFieldMode::CdN(n) if n >= 2) {
        report.check("vanishes-above-two", res.result.is_zero(), "H^r(K, T) = 0 for r >= 3");
    }
    if reduction_type(&t)? == ReductionType::Unipotent && (mode != ResidueFieldMode::QuasiFinite || t.frobenius().is_some())
    {
        let u = unipotent_cross_check(&t, mode)?;
        report.check("unipotent-h1-routes-agree", u.degree_one_agrees, "phi(T) route vs H^1(J, X*)^D route");
        report.check("unipotent-h2-vanishes", u.degree_two_vanishes, "H^2(K, T) = 0 for unipotent T");
    }
    Ok(())
}

fn run_reductive_h1(report: &mut Report, doc: &InputDocument, max: usize, mode: ResidueFieldMode) -> Result<()> {
    let rd = doc.root_datum(max)?;
    let h = h1_reductive(&rd, mode)?;
    report.results = json!({
        "mode": mode_value(mode),
        "h1": local_result_value(&h.result),
        "one_step": h.one_step.as_ref().map(group_value),
        "two_step": h.two_step.as_ref().map(group_value),
    });
    if mode == ResidueFieldMode::QuasiFinite {
        report.check(
            "coinvariant-routes-agree",
            h.routes_agree,
            "torsion of pi_1(G)_Gamma vs H^1 of Frobenius on pi_1(G)_J",
        );
    }
    Ok(())
}

fn run_abelian(report: &mut Report, doc: &InputDocument, max: usize, mode: ResidueFieldMode, r: i32) -> Result<()> {
    let rd = doc.root_datum(max)?;
    let a = abelian_cohomology(&rd, mode, r)?;
    report.results = json!({
        "degree": r,
        "mode": mode_value(mode),
        "pi1": module_value(&a.pi1),
        "pi1_inertia_coinvariants": module_value(&a.pi1_coinv),
        "cohomology": local_result_value(&a.result),
    });
    if r >= 3 && !matches!(mode, ResidueFieldMode::CdN(n) if n >= 2) {
        report.check("vanishes-above-two", a.result.is_zero(), "H^r_ab(K, G) = 0 for r >= 3");
    }
    if doc.root_datum.is_none() {
        let t = doc.torus(max)?;
        let direct = local_cohomology(&t, mode, r)?.result;
        report.check(
            "torus-agrees-with-local-cohomology",
            same_local_result(&direct, &a.result),
            "pi_1 of a torus is X_*, so H^r_ab(K, T) = H^r(K, T)",
        );
    }
    Ok(())
}

/// Equality of results, with every form of the zero group identified.
pub(crate) fn same_local_result(a: &LocalResult, b: &LocalResult) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    match (a, b) {
        (LocalResult::Group(x), LocalResult::Group(y)) => x == y,
        (LocalResult::Divisible(x), LocalResult::Divisible(y)) => x == y,
        (LocalResult::Symbolic(x), LocalResult::Symbolic(y)) => x.structure() == y.structure(),
        _ => false,
    }
}

fn run_is_flasque(report: &mut Report, doc: &InputDocument, max: usize) -> Result<()> {
    let cochar: GModule = if doc.root_datum.is_some() {
        doc.root_datum(max)?.cochar().clone()
    } else {
        cocharacters(&doc.torus(max)?)
    };
    let flasque = is_flasque(&cochar)?;
    // H^1(H, X_*) is dual to H^-1(H, X*) subgroup by subgroup.
    let character = dual_module(&cochar);
    let mut witness = None;
    for (i, h) in cochar.group().subgroups().iter().enumerate() {
        if !tate(&restrict_action(&character, h), -1)?.group.is_trivial() {
            witness = Some(i);
            break;
        }
    }
    report.results = json!({
        "flasque": flasque,
        "subgroups": cochar.group().subgroups().len(),
    });
    report.check(
        "dual-route-agrees",
        flasque == witness.is_none(),
        match witness {
            Some(i) => format!("H^-1 of the character lattice is nonzero on subgroup {i}"),
            None => "H^-1 of the character lattice vanishes on every subgroup".into(),
        },
    );
    Ok(())
}

fn corpus(opts: &RunOptions) -> Result<Report> {
    let mut report = Report::new("corpus", None);
    let docs = builtin_corpus();
    report.results = match &opts.name {
        Some(n) => {
            let d = corpus_entry(n).ok_or_else(|| Error::schema("name", format!("no corpus entry named '{n}'")))?;
            json!({ "document": d.to_value() })
        }
        None => json!({ "entries": docs.iter().map(InputDocument::to_value).collect::<Vec<Value>>() }),
    };
    let mut names: Vec<&str> = docs.iter().map(|d| d.name.as_str()).collect();
    let total = names.len();
    names.sort_unstable();
    names.dedup();
    report.check("names-unique", names.len() == total, format!("{total} entries"));
    let round_trip = docs.iter().all(|d| InputDocument::from_value(&d.to_value()).as_ref() == Ok(d));
    report.check("round-trip", round_trip, "parse(print(doc)) = doc");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(name: &str) -> InputDocument {
        corpus_entry(name).unwrap()
    }

    fn go(c: Command, name: &str, opts: RunOptions) -> Report {
        let r = run(c, Some(&entry(name)), &Config::default(), &opts).unwrap();
        assert!(r.passed(), "{}", r.to_json(true));
        r
    }

    #[test]
    fn component_group_of_norm_one() {
        let r = go(Command::ComponentGroup, "norm-one-ramified-quadratic", RunOptions::default());
        assert_eq!(r.results["component_group"], json!({ "rank": 0, "invariant_factors": [2] }));
    }

    #[test]
    fn brauer_group_of_gm() {
        let opts = RunOptions { degree: Some(2), ..Default::default() };
        let r = go(Command::LocalCohomology, "gm", opts);
        assert_eq!(r.results["cohomology"], json!({ "divisible_rank": 1 }));
    }

    #[test]
    fn multiplicative_when_inertia_trivial() {
        let r = go(Command::ReductionType, "induced-c2-unramified", RunOptions::default());
        assert_eq!(r.results["reduction_type"], json!("Multiplicative"));
    }

    #[test]
    fn every_command_runs_on_the_corpus() {
        for d in builtin_corpus() {
            let commands: &[Command] = if d.ses.is_some() {
                &[Command::SixTerm]
            } else if d.root_datum.is_some() {
                &[Command::ReductiveH1, Command::AbelianCohomology, Command::IsFlasque]
            } else {
                &[
                    Command::ComponentGroup,
                    Command::ReductionType,
                    Command::Resolve,
                    Command::LocalCohomology,
                    Command::ReductiveH1,
                    Command::AbelianCohomology,
                    Command::IsFlasque,
                ]
            };
            for &c in commands {
                let r = run(c, Some(&d), &Config::default(), &RunOptions::default()).unwrap();
                assert!(r.passed(), "{c} on {}: {}", d.name, r.to_json(true));
            }
        }
    }

    #[test]
    fn modes_parse() {
        assert_eq!(parse_mode("cd=3").unwrap(), ResidueFieldMode::CdN(3));
        assert!(parse_mode("cd=x").is_err());
        assert_eq!("six-term".parse::<Command>().unwrap(), Command::SixTerm);
    }

    #[test]
    fn missing_input_is_an_input_error() {
        let e = run(Command::Resolve, None, &Config::default(), &RunOptions::default()).unwrap_err();
        assert!(e.is_input_error());
    }
}
