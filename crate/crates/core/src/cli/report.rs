//! Machine and human renderings of results.

use serde_json::{json, Value};

use super::document::{to_json_matrix, to_json_vec, ConeDocument, LatticeDocument};
use crate::check::Check;
use crate::coloured::{ColouredCone, ColouredFan};
use crate::lattice::{AbelianGroupStructure, IntMatrix};

/// What a command produced: a verdict plus both renderings.
#[derive(Clone, Debug)]
pub struct Report {
    pub passed: bool,
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn new(passed: bool, json: Value, text: impl Into<String>) -> Self {
        Report {
            passed,
            json,
            text: text.into(),
        }
    }
}

pub fn check_json(c: &Check) -> Value {
    json!({ "status": c.status.to_string(), "witness": c.witness })
}

pub fn check_line(name: &str, c: &Check) -> String {
    match &c.witness {
        Some(w) => format!("{name}: {} ({w})", c.status),
        None => format!("{name}: {}", c.status),
    }
}

pub fn checks_text(checks: &[(&str, &Check)]) -> String {
    checks
        .iter()
        .map(|(n, c)| check_line(n, c))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn checks_json(checks: &[(&str, &Check)]) -> Value {
    Value::Object(
        checks
            .iter()
            .map(|(n, c)| (n.to_string(), check_json(c)))
            .collect(),
    )
}

pub fn group_json(g: &AbelianGroupStructure) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": to_json_vec(g.torsion()),
        "name": g.diagonalizable_name(),
    })
}

pub fn cone_json(c: &ColouredCone) -> Value {
    serde_json::to_value(ConeDocument::from_cone(c)).expect("cones serialize")
}

pub fn fan_json(f: &ColouredFan) -> Value {
    json!({
        "lattice": LatticeDocument::from_lattice(f.lattice()),
        "maximal_cones": f.maximal_cones().iter().map(cone_json).collect::<Vec<_>>(),
    })
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    serde_json::to_value(to_json_matrix(m)).expect("matrices serialize")
}

pub fn fan_text(f: &ColouredFan) -> String {
    let mut lines = Vec::new();
    if f.lattice().colours().is_empty() {
        lines.push(format!("lattice of rank {} without colours", f.rank()));
    } else {
        let colours: Vec<String> = f
            .lattice()
            .colours()
            .iter()
            .map(|c| format!("{} at {}", c.label, vector_text(&c.point)))
            .collect();
        lines.push(format!(
            "lattice of rank {} with colours {}",
            f.rank(),
            colours.join(", ")
        ));
    }
    lines.extend(f.maximal_cones().iter().map(|c| format!("  {c}")));
    lines.join("\n")
}

pub fn vector_text(v: &[num_bigint::BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}
