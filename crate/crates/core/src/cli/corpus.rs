//! Builtin example documents.

use serde_json::{json, Value};

use super::input::InputDocument;
use crate::json::int_list_value;
use crate::reductive::RootDatumModel;

fn torus(name: &str, rank: usize, gens: Value, inertia: Value, frobenius: &str) -> Value {
    json!({
        "schema": "neron/1",
        "name": name,
        "rank": rank,
        "galois": { "generators": gens },
        "inertia": inertia,
        "frobenius": frobenius,
    })
}

fn split_root_datum(name: &str, rd: RootDatumModel) -> Value {
    let mut v = torus(name, rd.cochar().rank(), json!([]), json!([]), "");
    v["root_datum"] = json!({ "coroots": rd.coroots().iter().map(|c| int_list_value(c)).collect::<Vec<_>>() });
    v
}

/// Sequences over a ramified quadratic extension, `s` acting on `Z[C2]` by the swap.
fn quadratic_ses(name: &str, t1: i64, t3: i64, f: Value, g: Value) -> Value {
    let mut v = torus(name, 2, json!([{ "name": "s", "matrix": [[0, 1], [1, 0]] }]), json!(["s"]), "");
    v["ses"] = json!({
        "t1": { "rank": 1, "generators": { "s": [[t1]] } },
        "t2": { "rank": 2, "generators": { "s": [[0, 1], [1, 0]] } },
        "t3": { "rank": 1, "generators": { "s": [[t3]] } },
        "f": f,
        "g": g,
    });
    v
}

fn raw_corpus() -> Vec<Value> {
    let swap = json!([{ "name": "s", "matrix": [[0, 1], [1, 0]] }]);
    let sign = json!([{ "name": "s", "matrix": [[-1]] }]);
    let c4 = json!([{ "name": "r", "matrix": [[0, -1], [1, 0]] }]);
    let d4 = json!([
        { "name": "r", "matrix": [[0, -1], [1, 0]] },
        { "name": "f", "matrix": [[0, 1], [1, 0]] },
    ]);
    let d6 = json!([
        { "name": "r", "matrix": [[1, -1], [1, 0]] },
        { "name": "f", "matrix": [[0, 1], [1, 0]] },
    ]);
    let s3_reflection = json!([
        { "name": "t", "matrix": [[0, 1], [1, 0]] },
        { "name": "c", "matrix": [[0, -1], [1, -1]] },
    ]);
    let s3_signed = json!([
        { "name": "c", "matrix": [[0, 0, 1], [1, 0, 0], [0, 1, 0]] },
        { "name": "t", "matrix": [[0, -1, 0], [-1, 0, 0], [0, 0, -1]] },
    ]);
    let klein = json!([
        { "name": "a", "matrix": [[-1, 0], [0, 1]] },
        { "name": "b", "matrix": [[1, 0], [0, -1]] },
    ]);
    let mixed = json!([{ "name": "s", "matrix": [[0, 1, 0], [1, 0, 0], [0, 0, -1]] }]);
    let mut pgl3_outer = torus(
        "pgl3-outer-ramified",
        2,
        json!([{ "name": "s", "matrix": [[1, 0], [1, -1]] }]),
        json!(["s"]),
        "",
    );
    pgl3_outer["root_datum"] = json!({
        "coroots": [[1, -1], [-1, 1], [1, 2], [-1, -2], [2, 1], [-2, -1]]
    });
    let mut pgl3_outer_unramified = pgl3_outer.clone();
    pgl3_outer_unramified["name"] = json!("pgl3-outer-unramified");
    pgl3_outer_unramified["inertia"] = json!([]);
    pgl3_outer_unramified["frobenius"] = json!("s");
    let mut corpus = vec![
        torus("gm", 1, json!([]), json!([]), ""),
        torus("split-rank-3", 3, json!([]), json!([]), ""),
        torus("norm-one-ramified-quadratic", 1, sign.clone(), json!(["s"]), ""),
        torus("norm-one-unramified-quadratic", 1, sign, json!([]), "s"),
        torus("induced-c2-ramified", 2, swap.clone(), json!(["s"]), ""),
        torus("induced-c2-unramified", 2, swap, json!([]), "s"),
        torus("mixed-c2-ramified", 3, mixed, json!(["s"]), ""),
        torus("c4-rotation-ramified", 2, c4.clone(), json!(["r"]), ""),
        torus("c4-rotation-half-ramified", 2, c4, json!(["r^2"]), "r"),
        torus("klein-four", 2, klein, json!(["a"]), "b"),
        torus("s3-signed-permutation", 3, s3_signed, json!(["c"]), "t"),
        torus("s3-reflection-ramified", 2, s3_reflection, json!(["t", "c"]), ""),
        torus("dihedral-d4", 2, d4, json!(["r"]), "f"),
        torus("hexagonal-d6", 2, d6, json!(["r"]), "f"),
        quadratic_ses("norm-one-ses-ramified-quadratic", -1, 1, json!([[1], [1]]), json!([[1, -1]])),
        quadratic_ses("augmentation-ses-ramified-quadratic", 1, -1, json!([[1], [-1]]), json!([[1, 1]])),
    ];
    for (name, rd) in [
        ("sl2", RootDatumModel::split_sl(2)),
        ("pgl2", RootDatumModel::split_pgl(2)),
        ("sl3", RootDatumModel::split_sl(3)),
        ("pgl3", RootDatumModel::split_pgl(3)),
        ("gl3", RootDatumModel::split_gl(3)),
    ] {
        corpus.push(split_root_datum(name, rd.expect("split root datum")));
    }
    corpus.push(pgl3_outer);
    corpus.push(pgl3_outer_unramified);
    corpus
}

pub fn builtin_corpus() -> Vec<InputDocument> {
    raw_corpus()
        .iter()
        .map(|v| InputDocument::from_value(v).expect("builtin documents are valid"))
        .collect()
}

pub fn corpus_entry(name: &str) -> Option<InputDocument> {
    builtin_corpus().into_iter().find(|d| d.name == name)
}
