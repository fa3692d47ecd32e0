//! Human-readable rendering of a report. Everything printed here is read
//! back out of the JSON document.

use std::fmt::Write as _;

use serde_json::Value;

fn s(v: &Value) -> &str {
    v.as_str().unwrap_or("-")
}

fn strings(v: &Value) -> String {
    v.as_array()
        .map(|a| a.iter().map(s).collect::<Vec<_>>().join(", "))
        .unwrap_or_else(|| "-".into())
}

/// `["0","0","1",...]` as `e3`.
fn vector(v: &Value) -> String {
    let Some(a) = v.as_array() else { return "-".into() };
    let terms: Vec<String> = a
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match s(c) {
            "0" => None,
            "1" => Some(format!("e{}", i + 1)),
            "-1" => Some(format!("-e{}", i + 1)),
            c => Some(format!("{c}e{}", i + 1)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn structure(out: &mut String, c: &Value) {
    let _ = writeln!(out, "  X = {}, eta(X) = {}", vector(&c["X"]), s(&c["eta_of_X"]));
    for key in ["omega", "psi_minus", "eta", "psi_plus", "phi", "star_phi"] {
        if !c[key].is_null() {
            let _ = writeln!(out, "  {key:<9} = {}", s(&c[key]));
        }
    }
    if let Some(p) = c["positivity"].as_object() {
        let sign = if p["orientation"].as_i64() == Some(1) { "positive" } else { "negative" };
        let _ = writeln!(out, "  b {sign} definite, det b = {}", s(&p["det_b"]));
    }
    let yes = |v: &Value| match v.as_bool() {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    };
    let _ = writeln!(
        out,
        "  coclosed: {}, purely coclosed: {}, *phi exact: {}",
        yes(&c["coclosed"]),
        yes(&c["purely_coclosed"]),
        yes(&c["star_phi_exact"])
    );
    if let Some(f) = c["failure"].as_str() {
        let _ = writeln!(out, "  failed at {f}");
    }
}

fn obstruction(out: &mut String, c: &Value) {
    let _ = writeln!(out, "  {}", s(&c["rationale"]));
    let w = &c["witness"];
    match c["method"].as_u64() {
        Some(1) if !w["X"].is_null() => {
            let _ = writeln!(out, "  X = {}, Y = {}", vector(&w["X"]), vector(&w["Y"]));
            let _ = writeln!(out, "  U = span{{{}}}", strings(&w["U_basis"]));
        }
        Some(3) => {
            let _ = writeln!(out, "  W = span{{{}}}", strings(&w["W_basis"]));
            let _ = writeln!(out, "  lambda on H = {}", s(&w["lambda_on_H"]));
            if let Some(m) = w["numeric_minimum"].as_str() {
                let _ = writeln!(out, "  numeric minimum {m} (seed {}, {} starts)", w["seed"], w["starts"]);
            }
            if let Some(n) = w["negative_witness"].as_object() {
                let _ = writeln!(out, "  tau = {}, lambda(tau) = {}", s(&n["tau"]), s(&n["lambda"]));
            }
        }
        Some(4) if !w["v"].is_null() => {
            let _ = writeln!(out, "  v = {}, B(v,v) = {}", vector(&w["v"]), s(&w["B_vv"]));
        }
        _ => {}
    }
}

fn counts(v: &Value) -> String {
    v.as_object()
        .map(|m| {
            m.iter()
                .map(|(k, n)| format!("{n} {k}"))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .unwrap_or_default()
}

pub fn text(report: &Value) -> String {
    let mut out = String::new();
    let empty = vec![];
    let entries = report["entries"].as_array().unwrap_or(&empty);
    match s(&report["command"]) {
        "list" => {
            for e in entries {
                let _ = writeln!(
                    out,
                    "{:<9} step {}  center {:<7} {}{}",
                    s(&e["name"]),
                    e["step"],
                    strings(&e["center"]),
                    s(&e["gong"]),
                    e["parameter"].as_str().map(|p| format!("  [{p}]")).unwrap_or_default()
                );
            }
        }
        "show" => {
            for e in entries {
                let _ = writeln!(out, "{}  {}", s(&e["name"]), s(&e["source"]["gong"]));
                for eq in e["structure_equations"].as_array().unwrap_or(&empty) {
                    let _ = writeln!(out, "  {}", s(eq));
                }
                let _ = writeln!(out, "  center: {}", strings(&e["center"]));
                let _ = writeln!(out, "  step: {}", e["step"]);
            }
        }
        "classify" => {
            for e in entries {
                let detail = match s(&e["outcome"]) {
                    "verified" => format!("X = {}", vector(&e["certificate"]["X"])),
                    "obstructed" => format!(
                        "{} obstruction {}",
                        s(&e["certificate"]["method_name"]),
                        s(&e["certificate"]["verdict"])
                    ),
                    _ => s(&e["incomplete"]["reason"]).to_string(),
                };
                let _ = writeln!(
                    out,
                    "{:<16} step {}  {:<10}  {}",
                    s(&e["name"]),
                    e["step"],
                    s(&e["outcome"]),
                    detail
                );
            }
            let summary = &report["summary"];
            if let Some(m) = summary["algebras"].as_object() {
                for (step, c) in m {
                    let _ = writeln!(out, "{}: {}", step.replace('_', " "), counts(c));
                }
            }
            let _ = writeln!(out, "instances: {}", counts(&summary["instances"]));
            let _ = writeln!(out, "samples: {}", strings(&report["inputs"]["samples"]));
        }
        "replay" => {
            for e in entries {
                let status = match e["matches"].as_bool() {
                    Some(true) => "ok",
                    Some(false) => "MISMATCH",
                    None => "no certificate",
                };
                let _ = writeln!(
                    out,
                    "{:<16} recorded {:<14} replayed {:<14} {status}",
                    s(&e["name"]),
                    s(&e["recorded"]),
                    s(&e["replayed"])
                );
            }
        }
        _ => {
            for e in entries {
                let c = &e["certificate"];
                match s(&e["kind"]) {
                    "obstruction" => {
                        let _ = writeln!(
                            out,
                            "{}: {} obstruction {}",
                            s(&e["name"]),
                            s(&c["method_name"]),
                            s(&e["verdict"])
                        );
                        obstruction(&mut out, c);
                    }
                    kind => {
                        let _ = writeln!(out, "{}: {}", s(&e["name"]), s(&e["verdict"]));
                        structure(&mut out, c);
                        if kind == "exactness" {
                            let answer = match e["star_phi_exact"].as_bool() {
                                Some(true) => "exact",
                                Some(false) => "not exact",
                                None => "undetermined",
                            };
                            let _ = writeln!(out, "  *phi is {answer}");
                        }
                    }
                }
            }
        }
    }
    let _ = writeln!(out, "input {}", s(&report["input_digest"]));
    out
}
