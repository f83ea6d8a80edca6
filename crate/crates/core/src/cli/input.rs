//! Input documents (`"schema": "neron/1"`).
//!
//! ```json
//! {
//!   "schema": "neron/1",
//!   "name": "norm-one-ramified-quadratic",
//!   "rank": 1,
//!   "galois": {"generators": [{"name": "s", "matrix": [[-1]]}]},
//!   "inertia": ["s"],
//!   "frobenius": ""
//! }
//! ```
//!
//! Galois matrices act on the character lattice `X*`, or on the cocharacter lattice `X_*` when
//! a `root_datum` is present. Words are space-separated letters `g`, `g^-1` or `g^k`; the empty
//! word is the identity. A short exact sequence of tori `0 -> T1 -> T2 -> T3 -> 0` is given on
//! characters: `f : X*(T3) -> X*(T2)` and `g : X*(T2) -> X*(T1)`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::gmod::{close_group, dual_module, FiniteMatrixGroup, GModule};
use crate::intlat::IntMatrix;
use crate::json::{matrix_value, parse_int, parse_int_list, parse_matrix};
use crate::localfield::ResidueFieldMode;
use crate::reductive::RootDatumModel;
use crate::torus::{TorusModel, TorusSes};

pub const SCHEMA: &str = "neron/1";

/// A word in the Galois generators, as `(name, exponent)` letters with adjacent letters merged.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word(pub Vec<(String, i64)>);

impl Word {
    pub fn parse(s: &str, path: &str) -> Result<Word> {
        let mut letters: Vec<(String, i64)> = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if tok == "1" || tok == "e" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| Error::schema(path, format!("bad exponent in '{tok}'")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            if name.is_empty() {
                return Err(Error::schema(path, format!("empty generator name in '{tok}'")));
            }
            letters.push((name.to_string(), exp));
        }
        Ok(Word::from_letters(letters))
    }

    pub fn from_letters(letters: Vec<(String, i64)>) -> Word {
        let mut out: Vec<(String, i64)> = Vec::new();
        for (n, e) in letters {
            match out.last_mut() {
                Some(last) if last.0 == n => last.1 += e,
                _ => out.push((n, e)),
            }
            if out.last().is_some_and(|l| l.1 == 0) {
                out.pop();
            }
        }
        Word(out)
    }

    pub fn generator(name: &str) -> Word {
        Word(vec![(name.to_string(), 1)])
    }

    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn evaluate(&self, g: &FiniteMatrixGroup, path: &str) -> Result<usize> {
        let mut acc = 0;
        for (name, e) in &self.0 {
            let pos = g
                .generator_names()
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::schema(path, format!("unknown generator '{name}'")))?;
            let mut x = g.generators()[pos];
            if *e < 0 {
                x = g.inv(x);
            }
            for _ in 0..e.unsigned_abs() % g.element_order(x) as u64 {
                acc = g.mul(acc, x);
            }
        }
        Ok(acc)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") }).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Action of every Galois generator on one lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDoc {
    pub rank: usize,
    pub generators: Vec<(String, IntMatrix)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesDoc {
    pub t1: LatticeDoc,
    pub t2: LatticeDoc,
    pub t3: LatticeDoc,
    pub f: IntMatrix,
    pub g: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Doc {
    pub lattice: LatticeDoc,
    pub relations: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatumDoc {
    pub coroots: Vec<Vec<BigInt>>,
    pub pi1: Option<Pi1Doc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Options {
    pub degree: Option<i32>,
    pub mode: Option<ResidueFieldMode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub name: String,
    pub rank: usize,
    pub generators: Vec<(String, IntMatrix)>,
    pub inertia: Vec<Word>,
    pub frobenius: Option<Word>,
    pub ses: Option<SesDoc>,
    pub root_datum: Option<RootDatumDoc>,
    pub options: Options,
}

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::schema(path, "expected an object"))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| Error::schema(path, format!("missing field '{key}'")))
}

fn parse_usize(v: &Value, path: &str) -> Result<usize> {
    let x = parse_int(v, path)?;
    usize::try_from(&x).map_err(|_| Error::schema(path, "expected a non-negative integer"))
}

fn parse_word(v: &Value, path: &str) -> Result<Word> {
    match v {
        Value::String(s) => Word::parse(s, path),
        Value::Array(xs) => {
            let mut letters = Vec::new();
            for (i, x) in xs.iter().enumerate() {
                let p = format!("{path}[{i}]");
                letters.extend(Word::parse(x.as_str().ok_or_else(|| Error::schema(&p, "expected a string"))?, &p)?.0);
            }
            Ok(Word::from_letters(letters))
        }
        _ => Err(Error::schema(path, "expected a word (string)")),
    }
}

fn check_names(names: &[String], path: &str) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() || n.contains(|c: char| c.is_whitespace() || c == '^' || c == '*') || n == "1" || n == "e" {
            return Err(Error::schema(format!("{path}[{i}].name"), format!("invalid generator name '{n}'")));
        }
        if names[..i].contains(n) {
            return Err(Error::schema(format!("{path}[{i}].name"), format!("duplicate generator name '{n}'")));
        }
    }
    Ok(())
}

/// `{"rank": n, "generators": {"s": matrix, ...}}` with one matrix per Galois generator.
fn parse_lattice(v: &Value, names: &[String], path: &str) -> Result<LatticeDoc> {
    let o = obj(v, path)?;
    let rank = parse_usize(field(o, "rank", path)?, &format!("{path}.rank"))?;
    let gp = format!("{path}.generators");
    let gens = obj(field(o, "generators", path)?, &gp)?;
    let mut generators = Vec::with_capacity(names.len());
    for n in names {
        let p = format!("{gp}.{n}");
        let m = gens.get(n).ok_or_else(|| Error::schema(&gp, format!("missing action of generator '{n}'")))?;
        generators.push((n.clone(), parse_matrix(m, rank, rank, &p)?));
    }
    if let Some(extra) = gens.keys().find(|k| !names.contains(k)) {
        return Err(Error::schema(gp, format!("unknown generator '{extra}'")));
    }
    Ok(LatticeDoc { rank, generators })
}

fn parse_mode(v: &Value, path: &str) -> Result<ResidueFieldMode> {
    match v {
        Value::String(s) => match s.as_str() {
            "quasi-finite" => Ok(ResidueFieldMode::QuasiFinite),
            "generic" => Ok(ResidueFieldMode::GenericCdLeq1),
            _ => Err(Error::schema(path, format!("unknown mode '{s}'"))),
        },
        Value::Object(o) => {
            let n = parse_usize(field(o, "cd", path)?, &format!("{path}.cd"))?;
            Ok(ResidueFieldMode::CdN(u32::try_from(n).map_err(|_| Error::schema(path, "cd too large"))?))
        }
        _ => Err(Error::schema(path, "expected \"quasi-finite\", \"generic\" or {\"cd\": n}")),
    }
}

pub fn mode_value(m: ResidueFieldMode) -> Value {
    match m {
        ResidueFieldMode::QuasiFinite => json!("quasi-finite"),
        ResidueFieldMode::GenericCdLeq1 => json!("generic"),
        ResidueFieldMode::CdN(n) => json!({ "cd": n }),
    }
}

impl InputDocument {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::schema("$", format!("invalid JSON: {e}")))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let o = obj(v, "$")?;
        if let Some(s) = o.get("schema") {
            if s.as_str() != Some(SCHEMA) {
                return Err(Error::schema("$.schema", format!("expected \"{SCHEMA}\"")));
            }
        }
        let name = match o.get("name") {
            Some(Value::String(s)) => s.clone(),
            Some(_) => return Err(Error::schema("$.name", "expected a string")),
            None => String::new(),
        };
        let rank = parse_usize(field(o, "rank", "$")?, "$.rank")?;
        let galois = obj(field(o, "galois", "$")?, "$.galois")?;
        let garr = field(galois, "generators", "$.galois")?
            .as_array()
            .ok_or_else(|| Error::schema("$.galois.generators", "expected an array"))?;
        let mut generators = Vec::with_capacity(garr.len());
        for (i, g) in garr.iter().enumerate() {
            let p = format!("$.galois.generators[{i}]");
            let go = obj(g, &p)?;
            let name = field(go, "name", &p)?
                .as_str()
                .ok_or_else(|| Error::schema(format!("{p}.name"), "expected a string"))?
                .to_string();
            generators.push((name, parse_matrix(field(go, "matrix", &p)?, rank, rank, &format!("{p}.matrix"))?));
        }
        let names: Vec<String> = generators.iter().map(|g| g.0.clone()).collect();
        check_names(&names, "$.galois.generators")?;
        let inertia = match o.get("inertia") {
            None => Vec::new(),
            Some(Value::Array(xs)) => xs
                .iter()
                .enumerate()
                .map(|(i, x)| parse_word(x, &format!("$.inertia[{i}]")))
                .collect::<Result<_>>()?,
            Some(_) => return Err(Error::schema("$.inertia", "expected an array of words")),
        };
        let frobenius = match o.get("frobenius") {
            None | Some(Value::Null) => None,
            Some(w) => Some(parse_word(w, "$.frobenius")?),
        };
        let ses = match o.get("ses") {
            None | Some(Value::Null) => None,
            Some(s) => {
                let so = obj(s, "$.ses")?;
                let t1 = parse_lattice(field(so, "t1", "$.ses")?, &names, "$.ses.t1")?;
                let t2 = parse_lattice(field(so, "t2", "$.ses")?, &names, "$.ses.t2")?;
                let t3 = parse_lattice(field(so, "t3", "$.ses")?, &names, "$.ses.t3")?;
                let f = parse_matrix(field(so, "f", "$.ses")?, t2.rank, t3.rank, "$.ses.f")?;
                let g = parse_matrix(field(so, "g", "$.ses")?, t1.rank, t2.rank, "$.ses.g")?;
                Some(SesDoc { t1, t2, t3, f, g })
            }
        };
        let root_datum = match o.get("root_datum") {
            None | Some(Value::Null) => None,
            Some(r) => {
                let ro = obj(r, "$.root_datum")?;
                let carr = field(ro, "coroots", "$.root_datum")?
                    .as_array()
                    .ok_or_else(|| Error::schema("$.root_datum.coroots", "expected an array"))?;
                let mut coroots = Vec::with_capacity(carr.len());
                for (i, c) in carr.iter().enumerate() {
                    let p = format!("$.root_datum.coroots[{i}]");
                    let c = parse_int_list(c, &p)?;
                    if c.len() != rank {
                        return Err(Error::schema(p, format!("expected {rank} entries, found {}", c.len())));
                    }
                    coroots.push(c);
                }
                let pi1 = match ro.get("pi1") {
                    None | Some(Value::Null) => None,
                    Some(p) => {
                        let lattice = parse_lattice(p, &names, "$.root_datum.pi1")?;
                        let po = obj(p, "$.root_datum.pi1")?;
                        let rel = po.get("relations").cloned().unwrap_or(Value::Array(Vec::new()));
                        let cols = rel.as_array().map_or(0, Vec::len);
                        // Relations are listed one per entry, each a vector of length rank.
                        let relations = parse_matrix(&rel, cols, lattice.rank, "$.root_datum.pi1.relations")?.transpose();
                        Some(Pi1Doc { lattice, relations })
                    }
                };
                Some(RootDatumDoc { coroots, pi1 })
            }
        };
        let options = match o.get("options") {
            None | Some(Value::Null) => Options::default(),
            Some(v) => {
                let oo = obj(v, "$.options")?;
                let degree = match oo.get("degree") {
                    None => None,
                    Some(d) => Some(
                        i32::try_from(&parse_int(d, "$.options.degree")?)
                            .map_err(|_| Error::schema("$.options.degree", "degree out of range"))?,
                    ),
                };
                let mode = oo.get("mode").map(|m| parse_mode(m, "$.options.mode")).transpose()?;
                Options { degree, mode }
            }
        };
        Ok(InputDocument { name, rank, generators, inertia, frobenius, ses, root_datum, options })
    }

    /// Normalized JSON form; `from_value(to_value(d)) == d`.
    pub fn to_value(&self) -> Value {
        let lattice = |l: &LatticeDoc| {
            let gens: Map<String, Value> = l.generators.iter().map(|(n, m)| (n.clone(), matrix_value(m))).collect();
            json!({ "rank": l.rank, "generators": gens })
        };
        let mut o = Map::new();
        o.insert("schema".into(), json!(SCHEMA));
        o.insert("name".into(), json!(self.name));
        o.insert("rank".into(), json!(self.rank));
        let gens: Vec<Value> =
            self.generators.iter().map(|(n, m)| json!({ "name": n, "matrix": matrix_value(m) })).collect();
        o.insert("galois".into(), json!({ "generators": gens }));
        o.insert("inertia".into(), Value::Array(self.inertia.iter().map(|w| json!(w.to_string())).collect()));
        if let Some(f) = &self.frobenius {
            o.insert("frobenius".into(), json!(f.to_string()));
        }
        if let Some(s) = &self.ses {
            o.insert(
                "ses".into(),
                json!({
                    "t1": lattice(&s.t1),
                    "t2": lattice(&s.t2),
                    "t3": lattice(&s.t3),
                    "f": matrix_value(&s.f),
                    "g": matrix_value(&s.g),
                }),
            );
        }
        if let Some(r) = &self.root_datum {
            let mut ro = Map::new();
            ro.insert("coroots".into(), Value::Array(r.coroots.iter().map(|c| crate::json::int_list_value(c)).collect()));
            if let Some(p) = &r.pi1 {
                let mut po = lattice(&p.lattice);
                po.as_object_mut()
                    .expect("object")
                    .insert("relations".into(), matrix_value(&p.relations.transpose()));
                ro.insert("pi1".into(), po);
            }
            o.insert("root_datum".into(), Value::Object(ro));
        }
        let mut opts = Map::new();
        if let Some(d) = self.options.degree {
            opts.insert("degree".into(), json!(d));
        }
        if let Some(m) = self.options.mode {
            opts.insert("mode".into(), mode_value(m));
        }
        if !opts.is_empty() {
            o.insert("options".into(), Value::Object(opts));
        }
        Value::Object(o)
    }

    pub fn galois(&self, max_order: usize) -> Result<Arc<FiniteMatrixGroup>> {
        close_group(self.rank, &self.generators, max_order).map(Arc::new).map_err(|e| e.at("$.galois.generators"))
    }

    fn galois_data(&self, g: &Arc<FiniteMatrixGroup>) -> Result<(crate::gmod::SubgroupHandle, Option<usize>)> {
        let j: Vec<usize> = self
            .inertia
            .iter()
            .enumerate()
            .map(|(i, w)| w.evaluate(g, &format!("$.inertia[{i}]")))
            .collect::<Result<_>>()?;
        let inertia = g.subgroup_generated(&j);
        if !inertia.is_normal {
            return Err(Error::NonNormalSubgroupForResidualAction.at("$.inertia"));
        }
        let frobenius = self.frobenius.as_ref().map(|w| w.evaluate(g, "$.frobenius")).transpose()?;
        Ok((inertia, frobenius))
    }

    /// The torus whose character lattice carries the Galois matrices.
    pub fn torus(&self, max_order: usize) -> Result<TorusModel> {
        let g = self.galois(max_order)?;
        let (inertia, frobenius) = self.galois_data(&g)?;
        TorusModel::tautological(g, inertia, frobenius).map_err(|e| match e {
            Error::InvalidFrobenius => e.at("$.frobenius"),
            e => e.at("$"),
        })
    }

    fn lattice_module(&self, g: &Arc<FiniteMatrixGroup>, l: &LatticeDoc, path: &str) -> Result<GModule> {
        let actions = l.generators.iter().map(|(_, m)| m.clone()).collect();
        GModule::new(g.clone(), actions, IntMatrix::zeros(l.rank, 0)).map_err(|e| e.at(path))
    }

    pub fn torus_ses(&self, max_order: usize) -> Result<TorusSes> {
        let s = self.ses.as_ref().ok_or_else(|| Error::schema("$", "missing field 'ses'"))?;
        let g = self.galois(max_order)?;
        let (inertia, frobenius) = self.galois_data(&g)?;
        let mk = |l: &LatticeDoc, p: &str| -> Result<TorusModel> {
            TorusModel::new(self.lattice_module(&g, l, p)?, inertia.clone(), frobenius).map_err(|e| e.at(p))
        };
        let t1 = mk(&s.t1, "$.ses.t1")?;
        let t2 = mk(&s.t2, "$.ses.t2")?;
        let t3 = mk(&s.t3, "$.ses.t3")?;
        TorusSes::new(t1, t2, t3, s.f.clone(), s.g.clone()).map_err(|e| e.at("$.ses"))
    }

    /// The root datum; without a `root_datum` field the document is read as a torus
    /// (cocharacters of the character lattice, no coroots).
    pub fn root_datum(&self, max_order: usize) -> Result<RootDatumModel> {
        let g = self.galois(max_order)?;
        let (inertia, frobenius) = self.galois_data(&g)?;
        let (cochar, coroots, pi1) = match &self.root_datum {
            None => (dual_module(&GModule::tautological(g.clone())), Vec::new(), None),
            Some(r) => {
                let pi1 = match &r.pi1 {
                    None => None,
                    Some(p) => {
                        let actions = p.lattice.generators.iter().map(|(_, m)| m.clone()).collect();
                        Some(
                            GModule::new(g.clone(), actions, p.relations.clone())
                                .map_err(|e| e.at("$.root_datum.pi1"))?,
                        )
                    }
                };
                (GModule::tautological(g.clone()), r.coroots.clone(), pi1)
            }
        };
        RootDatumModel::new(cochar, coroots, pi1, inertia, frobenius).map_err(|e| match e {
            Error::CorootsNotStable => e.at("$.root_datum.coroots"),
            Error::InvalidFrobenius => e.at("$.frobenius"),
            e => e.at("$.root_datum"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let d = InputDocument::from_json_str(r#"{"rank": 1, "galois": {"generators": []}, "inertia": []}"#).unwrap();
        let t = d.torus(512).unwrap();
        assert_eq!(t.galois().order(), 1);
    }

    #[test]
    fn non_unimodular_generator() {
        let s = r#"{"rank": 1, "galois": {"generators": [{"name": "s", "matrix": [[2]]}]}, "inertia": []}"#;
        let e = InputDocument::from_json_str(s).unwrap().torus(512).unwrap_err();
        match e {
            Error::Validation { path, source } => {
                assert_eq!(path, "$.galois.generators");
                assert_eq!(*source, Error::NonUnimodularGenerator("s".into()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn norm_one_document() {
        let s = r#"{"rank": 1, "galois": {"generators": [{"name": "s", "matrix": [["-1"]]}]}, "inertia": ["s"]}"#;
        let t = InputDocument::from_json_str(s).unwrap().torus(512).unwrap();
        assert_eq!(t.galois().order(), 2);
        assert_eq!(t.inertia().order(), 2);
    }

    #[test]
    fn schema_errors_carry_paths() {
        let s = r#"{"rank": 2, "galois": {"generators": [{"name": "s", "matrix": [[1, 0], [0]]}]}}"#;
        match InputDocument::from_json_str(s).unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "$.galois.generators[0].matrix[1]"),
            other => panic!("{other:?}"),
        }
        let s = r#"{"rank": 1, "galois": {"generators": [{"name": "s", "matrix": [[-1]]}]}, "inertia": ["t"]}"#;
        let e = InputDocument::from_json_str(s).unwrap().torus(512).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "$.inertia[0]"));
    }

    #[test]
    fn words() {
        let w = Word::parse("a a^-1 b^2 b", "$").unwrap();
        assert_eq!(w, Word(vec![("b".into(), 3)]));
        assert_eq!(w.to_string(), "b^3");
        assert_eq!(Word::parse("1", "$").unwrap(), Word::identity());
        assert!(Word::parse("a^x", "$").is_err());
    }
}
