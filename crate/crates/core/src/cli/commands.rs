use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::document::{
    base_dir, read_document, to_canonical_json, Document, FanDocument, MapDocument,
};
use super::report::{
    check_json, checks_json, checks_text, cone_json, fan_json, fan_text, group_json, matrix_json,
    Report,
};
use super::Command;
use crate::check::Check;
use crate::coloured::validate_fan;
use crate::cone::Cone;
use crate::criteria::{self, GmsReason, UnstableMethod};
use crate::error::{Error, Result};
use crate::fantastack::{self, CfReport, FantastackInput};
use crate::stacky::{validate_map, StackyColouredFan};

pub(super) fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::Validate { document } => validate(document),
        Command::Kbeta { fan } => {
            let g = read_fan(fan)?.stacky()?.k_beta();
            Ok(Report::new(
                true,
                json!({ "k_beta": group_json(&g) }),
                g.to_string(),
            ))
        }
        Command::Toroidal { fan } => {
            let toroidal = criteria::is_toroidal(&read_fan(fan)?.coloured_fan()?);
            let text = if toroidal { "toroidal" } else { "not toroidal" };
            Ok(Report::new(toroidal, json!({ "toroidal": toroidal }), text))
        }
        Command::Decolour { fan, output } => {
            let doc = read_fan(fan)?;
            let decoloured = doc.stacky()?.decolour();
            let out = if doc.beta.is_some() {
                FanDocument::from_stacky(&decoloured)
            } else {
                FanDocument::from_fan(decoloured.fan())
            };
            write_output(output, &out.with_name(doc.name.clone()))?;
            Ok(Report::new(
                true,
                json!({ "output": output.display().to_string() }),
                format!("wrote {}", output.display()),
            ))
        }
        Command::Unstable { fan, cone, method } => unstable(fan, cone, *method),
        Command::Gms { fan } => gms(fan),
        Command::Iso { map } => iso(map),
        Command::GmsCheck { map } => gms_check(map),
        Command::Fantastack {
            fan,
            extra_columns,
            output,
        } => {
            let base = read_fan(fan)?.coloured_fan()?;
            let columns = parse_vectors(extra_columns)?;
            let input = FantastackInput::with_extra_columns(base, &columns)?;
            build(&input, output.as_deref(), None)
        }
        Command::Cox { fan, output } => {
            let base = read_fan(fan)?.coloured_fan()?;
            let regular = fantastack::is_regular(&base);
            match fantastack::cox_beta(&base) {
                Ok(input) => build(&input, output.as_deref(), Some(regular)),
                Err(Error::Cf1Violation) => Ok(spanning_failure()),
                Err(e) => Err(e),
            }
        }
        Command::Rootstack {
            fan,
            ray,
            order,
            output,
        } => {
            let base = read_fan(fan)?.coloured_fan()?;
            let ray = parse_vector(ray)?;
            let order: BigInt = order.trim().parse().map_err(|_| Error::ParseError {
                path: "--order".into(),
                message: format!("{order:?} is not an integer"),
            })?;
            match fantastack::root_stack_beta(&base, &ray, &order) {
                Ok(input) => build(&input, output.as_deref(), None),
                Err(Error::Cf1Violation) => Ok(spanning_failure()),
                Err(e) => Err(e),
            }
        }
        Command::Classgroup { fan } => {
            match fantastack::class_group(&read_fan(fan)?.coloured_fan()?) {
                Ok(g) => {
                    let text = format!("Z^{} torsion [{}]", g.free_rank(), join(g.torsion()));
                    Ok(Report::new(
                        true,
                        json!({ "class_group": group_json(&g) }),
                        text,
                    ))
                }
                Err(Error::Cf1Violation) => Ok(spanning_failure()),
                Err(e) => Err(e),
            }
        }
        Command::Product {
            first,
            second,
            output,
        } => product(first, second, output),
    }
}

fn join(v: &[BigInt]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn read_fan(path: &Path) -> Result<FanDocument> {
    match read_document(path)? {
        Document::Fan(doc) => Ok(doc),
        Document::Map(_) => Err(wrong_kind(path, "fan")),
    }
}

fn read_map(path: &Path) -> Result<MapDocument> {
    match read_document(path)? {
        Document::Map(doc) => Ok(doc),
        Document::Fan(_) => Err(wrong_kind(path, "map")),
    }
}

fn wrong_kind(path: &Path, expected: &str) -> Error {
    Error::ParseError {
        path: path.display().to_string(),
        message: format!("expected a {expected} document"),
    }
}

fn write_output<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_canonical_json(value)).map_err(|e| Error::ParseError {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse_vector(text: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .map(|x| {
            x.trim().parse().map_err(|_| Error::ParseError {
                path: text.to_string(),
                message: format!("{:?} is not an integer", x.trim()),
            })
        })
        .collect()
}

/// `"1,0;0,1"` to two vectors; blank text gives none.
fn parse_vectors(text: &str) -> Result<Vec<Vec<BigInt>>> {
    text.split(';')
        .filter(|v| !v.trim().is_empty())
        .map(parse_vector)
        .collect()
}

fn validate(path: &Path) -> Result<Report> {
    match read_document(path)? {
        Document::Fan(doc) => {
            let mut violations: Vec<(String, String)> = Vec::new();
            match doc.lattice.to_lattice() {
                Ok(lattice) => {
                    let report = validate_fan(&lattice, &doc.cone_data());
                    violations.extend(report.violations.into_iter().map(|v| (v.axiom, v.detail)));
                    if violations.is_empty() {
                        if let Err(e) = doc.stacky() {
                            violations.push(error_violation(e));
                        }
                    }
                }
                Err(e) => violations.push(error_violation(e)),
            }
            Ok(violation_report(violations, Value::Null))
        }
        Document::Map(doc) => {
            let parts = doc.stacky_parts(&base_dir(path)).and_then(|(d, c)| {
                let (lattice_map, base_map) = doc.matrices(&d, &c)?;
                Ok((d, c, lattice_map, base_map))
            });
            let (domain, codomain, lattice_map, base_map) = match parts {
                Ok(parts) => parts,
                Err(e @ Error::ParseError { .. }) => return Err(e),
                Err(e) => return Ok(violation_report(vec![error_violation(e)], Value::Null)),
            };
            let v = validate_map(&domain, &codomain, &lattice_map, &base_map)?;
            let checks = [
                ("colours", &v.colours),
                ("compatibility", &v.compatibility),
                ("commutes", &v.commutes),
                ("finite_cokernels", &v.finite_cokernels),
            ];
            let violations = checks
                .iter()
                .filter(|(_, c)| !c.passed())
                .map(|(n, c)| (n.to_string(), c.witness.clone().unwrap_or_default()))
                .collect();
            Ok(violation_report(violations, checks_json(&checks)))
        }
    }
}

fn error_violation(e: Error) -> (String, String) {
    match e {
        Error::ValidationError { axiom, detail } => (axiom, detail),
        other => ("invalid input".into(), other.to_string()),
    }
}

fn violation_report(violations: Vec<(String, String)>, checks: Value) -> Report {
    let valid = violations.is_empty();
    let text = if valid {
        "valid".to_string()
    } else {
        let lines: Vec<String> = violations
            .iter()
            .map(|(a, d)| format!("  {a}: {d}"))
            .collect();
        format!("invalid\n{}", lines.join("\n"))
    };
    let list: Vec<Value> = violations
        .iter()
        .map(|(a, d)| json!({ "axiom": a, "detail": d }))
        .collect();
    let mut out = json!({ "valid": valid, "violations": list });
    if !checks.is_null() {
        out["checks"] = checks;
    }
    Report::new(valid, out, text)
}

fn unstable(path: &Path, cone: &str, method: u8) -> Result<Report> {
    let s = read_fan(path)?.stacky()?;
    let method = UnstableMethod::from_number(method).expect("range checked by the parser");
    let target = Cone::from_generators(s.fan().rank(), &parse_vectors(cone)?)?;
    let tau = s
        .fan()
        .face_closure()
        .iter()
        .find(|c| c.cone() == &target)
        .ok_or(Error::ConeNotInFan)?
        .clone();
    let unstable = criteria::is_unstable(&s, &tau, method)?;
    let text = format!(
        "{tau} is {}",
        if unstable { "unstable" } else { "not unstable" }
    );
    Ok(Report::new(
        unstable,
        json!({ "cone": cone_json(&tau), "unstable": unstable }),
        text,
    ))
}

fn gms(path: &Path) -> Result<Report> {
    let s = read_fan(path)?.stacky()?;
    let r = criteria::gms_fan(&s)?;
    let mut lines = vec![
        format!("exists: {}", r.exists),
        format!("reason: {}", r.reason),
    ];
    if let Some(tau) = &r.maximal_unstable {
        lines.push(format!("maximal unstable cone: {tau}"));
    } else if r.reason == GmsReason::NoUniqueMaxUnstable {
        let cones: Vec<String> = r.unstable_cones.iter().map(|c| c.to_string()).collect();
        lines.push(format!("unstable cones: {}", cones.join(", ")));
    }
    if let Some(f) = &r.gms_fan {
        lines.push(format!("good moduli space fan on a {}", fan_text(f)));
    }
    let out = json!({
        "exists": r.exists,
        "reason": r.reason.to_string(),
        "unstable_cones": r.unstable_cones.iter().map(cone_json).collect::<Vec<_>>(),
        "maximal_unstable": r.maximal_unstable.as_ref().map(cone_json),
        "gms_fan": r.gms_fan.as_ref().map(fan_json),
        "projection": r.projection.as_ref().map(matrix_json),
        "lattice_map": r.lattice_map.as_ref().map(matrix_json),
    });
    Ok(Report::new(r.exists, out, lines.join("\n")))
}

fn iso(path: &Path) -> Result<Report> {
    let m = read_map(path)?.stacky_map(&base_dir(path))?;
    let v = criteria::check_isomorphism(&m)?;
    let checks = [
        ("lattice_iso", &v.lattice_iso),
        ("single_preimages", &v.single_preimages),
        ("monoids", &v.monoids),
    ];
    let overall = v.overall();
    let text = format!(
        "isomorphism: {}\n{}",
        verdict(overall),
        checks_text(&checks)
    );
    Ok(Report::new(
        overall,
        json!({ "isomorphism": overall, "checks": checks_json(&checks) }),
        text,
    ))
}

fn gms_check(path: &Path) -> Result<Report> {
    let m = read_map(path)?.stacky_map(&base_dir(path))?;
    let v = criteria::check_gms_morphism(&m)?;
    let checks = [
        ("single_preimages", &v.single_preimages),
        ("unstable_preimage", &v.unstable_preimage),
        ("surjective_base", &v.surjective_base),
        ("kernel", &v.kernel),
    ];
    let overall = v.overall();
    let text = format!(
        "good moduli space morphism: {}\n{}",
        verdict(overall),
        checks_text(&checks)
    );
    let out = json!({
        "gms_morphism": overall,
        "checks": checks_json(&checks),
        "trivial_preimage": v.trivial_preimage.as_ref().map(cone_json),
    });
    Ok(Report::new(overall, out, text))
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

fn cf_checks(r: &CfReport) -> [(&'static str, &Check); 4] {
    [
        ("spanning", &r.spanning),
        ("columns_in_support", &r.columns_in_support),
        ("colour_columns", &r.colour_columns),
        ("rays_hit", &r.rays_hit),
    ]
}

fn spanning_failure() -> Report {
    let check = Check::fail("colour points and support span a proper subspace");
    let text = checks_text(&[("spanning", &check)]);
    Report::new(
        false,
        json!({ "conditions": { "spanning": check_json(&check) } }),
        text,
    )
}

fn build(input: &FantastackInput, output: Option<&Path>, regular: Option<bool>) -> Result<Report> {
    let report = fantastack::check_cf(input);
    let checks = cf_checks(&report);
    if !report.all_pass() {
        return Ok(Report::new(
            false,
            json!({ "conditions": checks_json(&checks) }),
            checks_text(&checks),
        ));
    }
    let s = fantastack::build_fantastack(input)?;
    let doc = FanDocument::from_stacky(&s);
    if let Some(path) = output {
        write_output(path, &doc)?;
    }
    let mut lines = vec![
        format!("beta: {}", s.beta()),
        format!("fan on a {}", fan_text(s.fan())),
        format!("stabilizer: {}", s.k_beta()),
    ];
    let mut out = json!({
        "conditions": checks_json(&checks),
        "stacky_fan": doc,
        "k_beta": group_json(&s.k_beta()),
    });
    if let Some(regular) = regular {
        lines.push(format!("regular: {regular}"));
        out["regular"] = json!(regular);
    }
    Ok(Report::new(true, out, lines.join("\n")))
}

fn product(first: &Path, second: &Path, output: &Path) -> Result<Report> {
    let written = match (read_document(first)?, read_document(second)?) {
        (Document::Fan(a), Document::Fan(b)) => {
            let p: StackyColouredFan = a.stacky()?.product(&b.stacky()?);
            write_output(output, &FanDocument::from_stacky(&p))?;
            format!("fan on a {}", fan_text(p.fan()))
        }
        (Document::Map(a), Document::Map(b)) => {
            let p = a
                .stacky_map(&base_dir(first))?
                .product(&b.stacky_map(&base_dir(second))?)?;
            write_output(output, &MapDocument::from_map(&p))?;
            format!("map with lattice map {}", p.lattice_map())
        }
        _ => return Err(wrong_kind(second, "document of the same kind as the first")),
    };
    let text = format!("wrote {}: {written}", output.display());
    Ok(Report::new(
        true,
        json!({ "output": output.display().to_string() }),
        text,
    ))
}
