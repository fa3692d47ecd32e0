use std::path::Path;

use serde_json::{json, Value};

use nilg2::ansatz::{verify, AnsatzInput};
use nilg2::nilpotent::{LieAlgebra, DIM};
use nilg2::obstructions;
use nilg2::report;

use super::{read, CliError, Outcome, Source};

const POSITIVE: [&str; 3] = ["valid", "holds", "holds_numeric"];

fn structure(alg: LieAlgebra, cert: &Value) -> Result<(String, bool), CliError> {
    let form = |key: &str| {
        report::parse_form_value(&cert[key], DIM).ok_or_else(|| CliError::Replay(format!("certificate field `{key}`")))
    };
    let x = match &cert["X"] {
        Value::Null => None,
        v => Some(report::parse_vector(v).ok_or_else(|| CliError::Replay("certificate field `X`".into()))?),
    };
    let input = AnsatzInput {
        alg,
        omega: form("omega")?,
        psi_minus: form("psi_minus")?,
        eta: form("eta")?,
        x,
    };
    let again = verify(&input);
    Ok((again.verdict().to_string(), again.to_json() == *cert))
}

fn obstruction(alg: LieAlgebra, cert: &Value) -> Result<(String, bool), CliError> {
    let verdict = obstructions::replay(&alg, cert).map_err(|e| CliError::Replay(e.to_string()))?;
    Ok((verdict.as_str().to_string(), cert["verdict"].as_str() == Some(verdict.as_str())))
}

fn check(entry: &Value) -> Result<Value, CliError> {
    let name = entry["name"].as_str().unwrap_or("?");
    let recorded = entry["verdict"].as_str().unwrap_or("");
    let kind = match (entry["kind"].as_str(), entry["outcome"].as_str()) {
        (Some("structure" | "exactness"), _) | (Some("classification"), Some("verified")) => "structure",
        (Some("obstruction"), _) | (Some("classification"), Some("obstructed")) => "obstruction",
        (Some("classification"), _) => {
            return Ok(json!({
                "name": name,
                "recorded": recorded,
                "replayed": null,
                "matches": null,
            }))
        }
        _ => return Err(CliError::Replay(format!("{name}: entry carries no certificate"))),
    };
    let alg = Source::from_json(&entry["source"])?;
    let cert = &entry["certificate"];
    let (replayed, matches) = match kind {
        "structure" => structure(alg, cert)?,
        _ => obstruction(alg, cert)?,
    };
    Ok(json!({
        "name": name,
        "recorded": recorded,
        "replayed": replayed,
        "matches": matches,
    }))
}

pub(super) fn run(path: &Path) -> Result<Outcome, CliError> {
    let doc: Value = serde_json::from_str(&read(path)?).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    let entries = doc["entries"]
        .as_array()
        .ok_or_else(|| CliError::Replay("not a report: no `entries`".into()))?
        .iter()
        .map(check)
        .collect::<Result<Vec<_>, _>>()?;
    let ok = entries
        .iter()
        .all(|e| e["matches"] == json!(true) && e["replayed"].as_str().is_some_and(|v| POSITIVE.contains(&v)));
    let matched = entries.iter().filter(|e| e["matches"] == json!(true)).count();
    Ok(Outcome {
        command: "replay",
        inputs: json!({"report_digest": doc["input_digest"], "report_command": doc["command"]}),
        data: doc.clone(),
        summary: json!({"entries": entries.len(), "matching": matched}),
        entries,
        ok,
    })
}
