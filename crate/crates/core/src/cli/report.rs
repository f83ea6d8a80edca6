//! Machine-readable reports.

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::input::SCHEMA;
use crate::gmod::GModule;
use crate::intlat::{AbHom, FgAbGroup};
use crate::json::{int_list_value, matrix_value};
use crate::localfield::LocalResult;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Value>,
    pub results: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Value>,
}

impl Report {
    pub fn new(command: &str, input: Option<Value>) -> Self {
        Report { schema: SCHEMA, command: command.into(), input, results: json!({}), checks: Vec::new(), timing: None }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("report serializes")
        } else {
            serde_json::to_string(self).expect("report serializes")
        }
    }
}

pub fn group_value(g: &FgAbGroup) -> Value {
    serde_json::to_value(g).expect("group serializes")
}

pub fn hom_value(h: &AbHom) -> Value {
    json!({
        "source": group_value(&h.source()),
        "target": group_value(&h.target()),
        "source_orders": int_list_value(h.source_orders()),
        "target_orders": int_list_value(h.target_orders()),
        "matrix": matrix_value(h.matrix()),
    })
}

/// Presented module over a finite group, by generator action.
pub fn module_value(m: &GModule) -> Value {
    let g = m.group();
    let action: Map<String, Value> = g
        .generator_names()
        .iter()
        .zip(g.generators())
        .map(|(n, &x)| (n.clone(), matrix_value(m.action(x))))
        .collect();
    json!({
        "rank": m.rank(),
        "group_order": g.order(),
        "action": action,
        "relations": matrix_value(&m.relations().transpose()),
        "structure": group_value(&m.structure()),
    })
}

pub fn local_result_value(r: &LocalResult) -> Value {
    match r {
        LocalResult::Group(g) => group_value(g),
        LocalResult::Divisible(n) => json!({ "divisible_rank": n }),
        LocalResult::Symbolic(m) => json!({ "residue_field_cohomology_of": module_value(m) }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_json_shape() {
        assert_eq!(group_value(&FgAbGroup::cyclic(2)), json!({ "rank": 0, "invariant_factors": [2] }));
        assert_eq!(local_result_value(&LocalResult::Divisible(1)), json!({ "divisible_rank": 1 }));
    }

    #[test]
    fn report_omits_timing() {
        let r = Report::new("corpus", None);
        assert!(!r.to_json(false).contains("timing"));
    }
}
