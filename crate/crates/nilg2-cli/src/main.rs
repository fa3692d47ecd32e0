use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use nilg2::ansatz::{
    classify, default_samples, parse_structure_file, structure_for, verify, AnsatzError, AnsatzInput, StructureData,
};
use nilg2::exact_algebra::{fmt_rational, parse_rational, Rational};
use nilg2::kv::{KvDoc, KvError};
use nilg2::nilpotent::{catalog, lookup, parse_algebra_file, GongSpec, LieAlgebra, NilpotentError};
use nilg2::obstructions::{self, Method, ObstructionError, SearchConfig};
use nilg2::report;

mod render;
mod replay;

#[derive(Parser)]
#[command(name = "nilg2", version, about = "Coclosed G2-structures on 7-dimensional nilpotent Lie algebras")]
struct Cli {
    /// Write the report to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Re-check every certificate in a JSON report written by this tool
    #[arg(long, value_name = "FILE")]
    replay: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Commands>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Commands {
    /// List the built-in algebras with their step and center
    List,
    /// Print the structure equations, center and step of an algebra
    Show {
        /// Catalog name or path to an algebra file
        name: String,
        /// Parameter value for a one-parameter family, e.g. 78/331
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Option<Rational>,
    },
    /// Check a purely coclosed G2-structure and print its certificate
    Verify {
        /// Catalog name or path to an algebra file
        name: String,
        /// Parameter value for a one-parameter family, e.g. 78/331
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Option<Rational>,
        /// Structure file to use instead of the stored one
        #[arg(long, value_name = "FILE")]
        data: Option<PathBuf>,
    },
    /// Run the non-existence tests for coclosed G2-structures
    Obstruct {
        /// Catalog name or path to an algebra file
        name: String,
        /// Parameter value for a one-parameter family, e.g. 78/331
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Option<Rational>,
        /// 1, 2, 3, 4 or auto (first that holds)
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: MethodArg,
        /// Candidate budget for tests 1 and 4 (default 200 pairs, 35 covectors)
        #[arg(long)]
        budget: Option<usize>,
        /// Seed for the numeric search in test 3
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify or obstruct every catalog algebra
    Classify {
        /// Parameter values for the families, comma separated
        #[arg(long, value_delimiter = ',', value_parser = parse_lambda, allow_hyphen_values = true)]
        samples: Option<Vec<Rational>>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether *phi is exact for a verified structure
    IsExact {
        /// Catalog name or path to an algebra file
        name: String,
        /// Parameter value for a one-parameter family, e.g. 78/331
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Option<Rational>,
        #[arg(long, value_name = "FILE")]
        data: Option<PathBuf>,
    },
}

#[derive(Clone, Copy)]
enum MethodArg {
    Auto,
    One(Method),
}

fn parse_lambda(s: &str) -> Result<Rational, String> {
    parse_rational(s.trim()).ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn parse_method(s: &str) -> Result<MethodArg, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(MethodArg::Auto);
    }
    s.parse().map(MethodArg::One).map_err(|e: ObstructionError| e.to_string())
}

#[derive(Debug, Error)]
enum CliError {
    #[error("unknown algebra `{0}` (see `nilg2 list`)")]
    UnknownAlgebra(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}: {1}")]
    Algebra(String, NilpotentError),
    #[error("{0}")]
    Structure(#[from] AnsatzError),
    #[error("{0}")]
    File(#[from] KvError),
    #[error("no stored structure for {0}; pass one with --data")]
    NoStructure(String),
    #[error("structure file is for {found}, not {expected}")]
    StructureMismatch { expected: String, found: String },
    #[error("--lambda cannot be combined with an algebra file")]
    LambdaWithFile,
    #[error("{0}")]
    Replay(String),
    #[error("--replay takes no subcommand")]
    ReplayWithCommand,
    #[error("nothing to do: give a subcommand or --replay FILE")]
    NoCommand,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A resolved algebra together with what is needed to rebuild it.
struct Source {
    alg: LieAlgebra,
    /// Catalog name used to find stored structures.
    base: String,
    gong: String,
}

impl Source {
    fn to_json(&self) -> Value {
        json!({
            "algebra": self.alg.name(),
            "gong": self.gong,
            "lambda": self.alg.lambda().map(report::rational),
        })
    }

    fn from_json(v: &Value) -> Result<LieAlgebra, CliError> {
        let bad = || CliError::Replay("entry without a usable source".into());
        let name = v["algebra"].as_str().ok_or_else(bad)?;
        let gong = v["gong"].as_str().ok_or_else(bad)?;
        let lambda = match &v["lambda"] {
            Value::Null => None,
            l => Some(l.as_str().and_then(parse_rational).ok_or_else(bad)?),
        };
        LieAlgebra::from_gong(name, &GongSpec::new(gong), lambda.as_ref())
            .map_err(|e| CliError::Algebra(name.to_string(), e))
    }
}

fn resolve(name: &str, lambda: Option<&Rational>) -> Result<Source, CliError> {
    if let Some(entry) = lookup(name) {
        let alg = entry
            .build(lambda)
            .map_err(|e| CliError::Algebra(entry.name.to_string(), e))?;
        return Ok(Source {
            alg,
            base: entry.name.to_string(),
            gong: entry.gong.to_string(),
        });
    }
    let path = Path::new(name);
    if !path.is_file() {
        return Err(CliError::UnknownAlgebra(name.to_string()));
    }
    if lambda.is_some() {
        return Err(CliError::LambdaWithFile);
    }
    let text = read(path)?;
    let alg = parse_algebra_file(&text).map_err(|e| CliError::Algebra(path.display().to_string(), e))?;
    let gong = KvDoc::parse(&text)?.require("gong")?.to_string();
    Ok(Source {
        base: alg.name().to_string(),
        alg,
        gong,
    })
}

fn structure_row(src: &Source, data: Option<&Path>) -> Result<StructureData, CliError> {
    let row = match data {
        Some(p) => parse_structure_file(&read(p)?)?,
        None => structure_for(&src.base, src.alg.lambda())
            .cloned()
            .ok_or_else(|| CliError::NoStructure(src.alg.name().to_string()))?,
    };
    if !row.algebra.eq_ignore_ascii_case(&src.base) {
        return Err(CliError::StructureMismatch {
            expected: src.base.clone(),
            found: row.algebra,
        });
    }
    if let (Some(own), Some(asked)) = (&row.lambda, src.alg.lambda()) {
        if own != asked {
            return Err(AnsatzError::ParameterMismatch {
                row: fmt_rational(own),
                asked: fmt_rational(asked),
            }
            .into());
        }
    }
    Ok(row)
}

fn row_json(row: &StructureData) -> Value {
    json!({
        "omega": row.omega,
        "psi_minus": row.psi_minus,
        "eta": row.eta,
        "X": row.x.as_ref().map(|x| report::vector(x)),
    })
}

fn search_config(budget: Option<usize>, seed: u64) -> SearchConfig {
    let d = SearchConfig::default();
    SearchConfig {
        pair_budget: budget.unwrap_or(d.pair_budget),
        covector_budget: budget.unwrap_or(d.covector_budget),
        seed,
        ..d
    }
}

/// Outcome of a command: the report payload and whether every verdict in
/// it is positive.
struct Outcome {
    command: &'static str,
    inputs: Value,
    /// Hashed along with `inputs` but not echoed in the report.
    data: Value,
    entries: Vec<Value>,
    summary: Value,
    ok: bool,
}

impl Outcome {
    fn report(&self) -> Value {
        let digest = Sha256::digest(report::canonical(&json!({"inputs": self.inputs, "data": self.data})));
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        json!({
            "tool": "nilg2",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "inputs": self.inputs,
            "input_digest": format!("sha256:{hex}"),
            "entries": self.entries,
            "summary": self.summary,
        })
    }
}

fn structure_entry(src: &Source, row: &StructureData) -> Result<(Value, bool, Option<bool>), CliError> {
    let input: AnsatzInput = row.instantiate_on(src.alg.clone())?;
    let cert = verify(&input);
    let entry = json!({
        "name": src.alg.name(),
        "kind": "structure",
        "source": src.to_json(),
        "verdict": cert.verdict(),
        "certificate": cert.to_json(),
    });
    Ok((entry, cert.valid(), cert.star_exact))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let command = match (&cli.replay, cli.command) {
        (Some(path), None) => return replay::run(path),
        (Some(_), Some(_)) => return Err(CliError::ReplayWithCommand),
        (None, None) => return Err(CliError::NoCommand),
        (None, Some(c)) => c,
    };
    Ok(match command {
        Commands::List => {
            let entries: Vec<Value> = catalog()
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "step": e.step,
                        "center": e.center.iter().map(|i| format!("e{i}")).collect::<Vec<_>>(),
                        "gong": e.gong,
                        "parameter": e.family.map(|a| a.describe()),
                        "stored_structure": structure_for(e.name, None).is_some(),
                    })
                })
                .collect();
            Outcome {
                command: "list",
                inputs: json!({}),
                data: json!(catalog().iter().map(|e| [e.name, e.gong]).collect::<Vec<_>>()),
                summary: json!({"algebras": entries.len()}),
                entries,
                ok: true,
            }
        }
        Commands::Show { name, lambda } => {
            let src = resolve(&name, lambda.as_ref())?;
            let alg = &src.alg;
            let equations: Vec<String> = alg
                .differentials()
                .iter()
                .enumerate()
                .map(|(i, de)| {
                    let rhs = if de.is_zero() { "0".to_string() } else { de.to_string() };
                    format!("de{} = {rhs}", i + 1)
                })
                .collect();
            let center: Vec<String> = alg.center().basis().iter().map(|v| report::vector_label(v)).collect();
            let entry = json!({
                "name": alg.name(),
                "source": src.to_json(),
                "structure_equations": equations,
                "center": center,
                "declared_center": alg.declared_center().map(|c| c.iter().map(|i| format!("e{i}")).collect::<Vec<_>>()),
                "step": alg.step(),
                "stored_structure": structure_for(&src.base, alg.lambda()).is_some(),
            });
            Outcome {
                command: "show",
                inputs: json!({"source": src.to_json()}),
                data: json!(null),
                entries: vec![entry],
                summary: json!({}),
                ok: true,
            }
        }
        Commands::Verify { name, lambda, data } => {
            let src = resolve(&name, lambda.as_ref())?;
            let row = structure_row(&src, data.as_deref())?;
            let (entry, valid, _) = structure_entry(&src, &row)?;
            Outcome {
                command: "verify",
                inputs: json!({"source": src.to_json(), "structure": row_json(&row)}),
                data: json!(null),
                summary: json!({"verdicts": report::summary_counts([entry["verdict"].as_str().unwrap_or("")].into_iter())}),
                entries: vec![entry],
                ok: valid,
            }
        }
        Commands::IsExact { name, lambda, data } => {
            let src = resolve(&name, lambda.as_ref())?;
            let row = structure_row(&src, data.as_deref())?;
            let (mut entry, valid, exact) = structure_entry(&src, &row)?;
            entry["kind"] = json!("exactness");
            entry["star_phi_exact"] = json!(exact);
            Outcome {
                command: "is-exact",
                inputs: json!({"source": src.to_json(), "structure": row_json(&row)}),
                data: json!(null),
                summary: json!({"star_phi_exact": exact}),
                entries: vec![entry],
                ok: valid,
            }
        }
        Commands::Obstruct {
            name,
            lambda,
            method,
            budget,
            seed,
        } => {
            let src = resolve(&name, lambda.as_ref())?;
            let cfg = search_config(budget, seed);
            let certs = match method {
                MethodArg::One(m) => vec![obstructions::run(&src.alg, m, &cfg)],
                MethodArg::Auto => match obstructions::auto(&src.alg, &cfg) {
                    Ok(c) => vec![c],
                    Err(all) => all,
                },
            };
            let ok = certs.iter().any(|c| c.verdict.holds());
            let entries: Vec<Value> = certs
                .iter()
                .map(|c| {
                    json!({
                        "name": src.alg.name(),
                        "kind": "obstruction",
                        "source": src.to_json(),
                        "verdict": c.verdict.as_str(),
                        "certificate": c.to_json(),
                    })
                })
                .collect();
            let method = match method {
                MethodArg::Auto => json!("auto"),
                MethodArg::One(m) => json!(m.number()),
            };
            Outcome {
                command: "obstruct",
                inputs: json!({
                    "source": src.to_json(),
                    "method": method,
                    "pair_budget": cfg.pair_budget,
                    "covector_budget": cfg.covector_budget,
                    "seed": cfg.seed,
                }),
                data: json!(null),
                summary: json!({"verdicts": report::summary_counts(entries.iter().filter_map(|e| e["verdict"].as_str()))}),
                entries,
                ok,
            }
        }
        Commands::Classify { samples, budget, seed } => {
            let samples = samples.unwrap_or_else(default_samples);
            let cfg = search_config(budget, seed);
            let c = classify(&samples, &cfg).to_json();
            let entries: Vec<Value> = c["entries"]
                .as_array()
                .map(|es| {
                    es.iter()
                        .map(|e| {
                            let mut e = e.clone();
                            let gong = lookup(e["algebra"].as_str().unwrap_or("")).map(|c| c.gong);
                            e["kind"] = json!("classification");
                            e["source"] = json!({"algebra": e["name"], "gong": gong, "lambda": e["lambda"]});
                            e["verdict"] = e["outcome"].clone();
                            e
                        })
                        .collect()
                })
                .unwrap_or_default();
            let ok = c["summary"]["complete"].as_bool() == Some(true);
            let data = json!({
                "catalog": catalog().iter().map(|e| [e.name, e.gong]).collect::<Vec<_>>(),
                "structures": nilg2::ansatz::structures().iter().map(row_json).collect::<Vec<_>>(),
            });
            Outcome {
                command: "classify",
                inputs: json!({
                    "samples": c["samples"],
                    "pair_budget": cfg.pair_budget,
                    "covector_budget": cfg.covector_budget,
                    "seed": cfg.seed,
                }),
                data,
                entries,
                summary: c["summary"].clone(),
                ok,
            }
        }
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not worth reporting.
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, out) = (cli.format, cli.out.clone());
    let result = run(cli).and_then(|o| {
        let report = o.report();
        let text = match format {
            Format::Json => report::canonical(&report),
            Format::Text => render::text(&report),
        };
        emit(&text, out.as_deref())?;
        Ok(o.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
