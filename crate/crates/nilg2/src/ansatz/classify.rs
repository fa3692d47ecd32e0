use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::exact_algebra::{rat, Rational};
use crate::nilpotent::{catalog, CatalogEntry};
use crate::obstructions::{self, ObstructionCertificate, SearchConfig};
use crate::report;

use super::{structure_for, verify, StructureCertificate};

/// Parameter values tried for each family, before the admissibility filter.
pub fn default_samples() -> Vec<Rational> {
    vec![rat(0, 1), rat(1, 1), rat(-1, 1), rat(2, 1), rat(1, 2), rat(78, 331), rat(5, 1)]
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Verified(Box<StructureCertificate>),
    Obstructed(ObstructionCertificate),
    Incomplete {
        reason: String,
        structure: Option<Box<StructureCertificate>>,
        attempts: Vec<ObstructionCertificate>,
    },
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Verified(_) => "verified",
            Outcome::Obstructed(_) => "obstructed",
            Outcome::Incomplete { .. } => "incomplete",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassEntry {
    /// Instance name, e.g. `12457N(78/331)`.
    pub name: String,
    pub algebra: &'static str,
    pub lambda: Option<Rational>,
    pub step: usize,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub samples: Vec<Rational>,
    pub entries: Vec<ClassEntry>,
}

fn classify_one(entry: &'static CatalogEntry, lambda: Option<Rational>, cfg: &SearchConfig) -> ClassEntry {
    let name = entry.instance_name(lambda.as_ref());
    let outcome = match entry.build(lambda.as_ref()) {
        Err(e) => Outcome::Incomplete {
            reason: e.to_string(),
            structure: None,
            attempts: vec![],
        },
        Ok(alg) => match structure_for(entry.name, lambda.as_ref()) {
            Some(row) => match row.instantiate_on(alg) {
                Ok(input) => {
                    let cert = verify(&input);
                    if cert.valid() {
                        Outcome::Verified(Box::new(cert))
                    } else {
                        Outcome::Incomplete {
                            reason: format!("stored structure fails: {}", cert.failure.clone().unwrap_or_default()),
                            structure: Some(Box::new(cert)),
                            attempts: vec![],
                        }
                    }
                }
                Err(e) => Outcome::Incomplete {
                    reason: format!("stored structure: {e}"),
                    structure: None,
                    attempts: vec![],
                },
            },
            None => match obstructions::auto(&alg, cfg) {
                Ok(c) => Outcome::Obstructed(c),
                Err(attempts) => Outcome::Incomplete {
                    reason: "no stored structure and no obstruction holds".into(),
                    structure: None,
                    attempts,
                },
            },
        },
    };
    ClassEntry {
        name,
        algebra: entry.name,
        lambda,
        step: entry.step,
        outcome,
    }
}

/// Classifies every catalog algebra, each family at the admissible
/// `samples`. Instances run in parallel; entries come back in catalog
/// order.
pub fn classify(samples: &[Rational], cfg: &SearchConfig) -> Classification {
    let tasks: Vec<(&'static CatalogEntry, Option<Rational>)> = catalog()
        .iter()
        .flat_map(|e| match e.family {
            None => vec![(e, None)],
            Some(adm) => samples
                .iter()
                .filter(|l| adm.admits(l))
                .map(|l| (e, Some(l.clone())))
                .collect(),
        })
        .collect();
    let entries = tasks
        .into_par_iter()
        .map(|(e, l)| classify_one(e, l, cfg))
        .collect();
    Classification {
        samples: samples.to_vec(),
        entries,
    }
}

impl Classification {
    /// Per algebra: `verified` only if every sampled instance verified.
    pub fn algebra_status(&self) -> Vec<(&'static str, usize, &'static str)> {
        let mut out: Vec<(&'static str, usize, &'static str)> = Vec::new();
        for e in &self.entries {
            let label = e.outcome.label();
            match out.last_mut() {
                Some(last) if last.0 == e.algebra => {
                    if last.2 != label {
                        last.2 = "incomplete";
                    }
                }
                _ => out.push((e.algebra, e.step, label)),
            }
        }
        out
    }

    /// `step → label → number of algebras`.
    pub fn counts(&self) -> BTreeMap<usize, BTreeMap<&'static str, usize>> {
        let mut m: BTreeMap<usize, BTreeMap<&'static str, usize>> = BTreeMap::new();
        for (_, step, label) in self.algebra_status() {
            *m.entry(step).or_default().entry(label).or_default() += 1;
        }
        m
    }

    pub fn complete(&self) -> bool {
        self.entries
            .iter()
            .all(|e| !matches!(e.outcome, Outcome::Incomplete { .. }))
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let (certificate, extra) = match &e.outcome {
                    Outcome::Verified(c) => (c.to_json(), json!(null)),
                    Outcome::Obstructed(c) => (c.to_json(), json!(null)),
                    Outcome::Incomplete {
                        reason,
                        structure,
                        attempts,
                    } => (
                        structure.as_ref().map_or(json!(null), |s| s.to_json()),
                        json!({
                            "reason": reason,
                            "obstruction_attempts": attempts.iter().map(ObstructionCertificate::to_json).collect::<Vec<_>>(),
                        }),
                    ),
                };
                json!({
                    "name": e.name,
                    "algebra": e.algebra,
                    "lambda": e.lambda.as_ref().map(report::rational),
                    "step": e.step,
                    "outcome": e.outcome.label(),
                    "method": match &e.outcome {
                        Outcome::Obstructed(c) => json!(c.method.name()),
                        _ => json!(null),
                    },
                    "certificate": certificate,
                    "incomplete": extra,
                })
            })
            .collect();
        let counts: serde_json::Map<String, Value> = self
            .counts()
            .into_iter()
            .map(|(step, m)| (format!("step_{step}"), json!(m)))
            .collect();
        json!({
            "samples": self.samples.iter().map(report::rational).collect::<Vec<_>>(),
            "entries": entries,
            "summary": {
                "algebras": counts,
                "instances": report::summary_counts(self.entries.iter().map(|e| e.outcome.label())),
                "complete": self.complete(),
            },
        })
    }
}
