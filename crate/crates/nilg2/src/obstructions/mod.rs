//! Four sufficient conditions for a 7-dimensional Lie algebra to carry no
//! coclosed G₂-structure, each producing a replayable certificate.

mod first;
mod fourth;
mod third;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::exact_algebra::Rational;
use crate::exterior::{KForm, Mono};
use crate::nilpotent::LieAlgebra;
use crate::report;

pub use first::{candidate_pairs, obstruction1, search1, wedge_square_vanishes};
pub use fourth::{candidate_covectors, diagonal_entry, obstruction4};
pub use third::{obstruction3, ThirdData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    First,
    Second,
    Third,
    Fourth,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::First, Method::Second, Method::Third, Method::Fourth];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::First => "First",
            Method::Second => "Second",
            Method::Third => "Third",
            Method::Fourth => "Fourth",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = ObstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "first" => Ok(Method::First),
            "2" | "second" => Ok(Method::Second),
            "3" | "third" => Ok(Method::Third),
            "4" | "fourth" => Ok(Method::Fourth),
            _ => Err(ObstructionError::UnknownMethod(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    HoldsNumeric,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::HoldsNumeric => "holds_numeric",
            Verdict::NotApplicable => "not_applicable",
        }
    }

    pub fn holds(self) -> bool {
        self != Verdict::NotApplicable
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "holds" => Some(Verdict::Holds),
            "holds_numeric" => Some(Verdict::HoldsNumeric),
            "not_applicable" => Some(Verdict::NotApplicable),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("X and Y are linearly dependent")]
    DependentPair,
    #[error("unknown obstruction method `{0}`")]
    UnknownMethod(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("certificate is for `{found}`, not `{expected}`")]
    WrongAlgebra { expected: String, found: String },
}

/// Search parameters shared by the four tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Candidate pairs for the first obstruction.
    pub pair_budget: usize,
    /// Candidate covectors for the fourth obstruction.
    pub covector_budget: usize,
    /// Random starts for the numeric minimization of the third.
    pub starts: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            pair_budget: 200,
            covector_budget: 35,
            starts: 200,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `U = span{ι_Xι_Yκ}` for the pair `(X, Y)`.
    First {
        x: Vec<Rational>,
        y: Vec<Rational>,
        u_basis: Vec<KForm<Rational>>,
        /// A pair of `U` basis indices with non-zero wedge, if any.
        failing: Option<(usize, usize)>,
    },
    Second {
        closed_basis: Vec<KForm<Rational>>,
        /// Generator index and a monomial avoiding `e¹`, `e²`.
        offending: Option<(usize, Mono)>,
    },
    Third(Box<ThirdData>),
    Fourth {
        v: Option<Vec<Rational>>,
        /// `B(v, v)` at the last candidate tried, as a polynomial.
        diagonal: String,
        closed_dimension: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionCertificate {
    pub algebra: String,
    pub method: Method,
    pub verdict: Verdict,
    pub witness: Witness,
    pub candidates_tried: usize,
    pub rationale: String,
}

/// The second obstruction: every closed 4-form lies in `⟨e¹, e²⟩ ∧ Λ³`.
pub fn obstruction2(alg: &LieAlgebra) -> ObstructionCertificate {
    let closed_basis = alg.closed_forms(4).basis();
    let offending = closed_basis.iter().enumerate().find_map(|(i, z)| {
        z.terms()
            .map(|(m, _)| m)
            .find(|m| !m.contains(1) && !m.contains(2))
            .map(|m| (i, m))
    });
    let verdict = if offending.is_none() {
        Verdict::Holds
    } else {
        Verdict::NotApplicable
    };
    let rationale = match offending {
        None => "every closed 4-form lies in <e1,e2>∧Λ³".to_string(),
        Some((i, m)) => format!("closed generator {i} contains e{m}, which avoids e1 and e2"),
    };
    ObstructionCertificate {
        algebra: alg.name().to_string(),
        method: Method::Second,
        verdict,
        witness: Witness::Second {
            closed_basis,
            offending,
        },
        candidates_tried: 1,
        rationale,
    }
}

pub fn run(alg: &LieAlgebra, method: Method, cfg: &SearchConfig) -> ObstructionCertificate {
    match method {
        Method::First => search1(alg, cfg.pair_budget),
        Method::Second => obstruction2(alg),
        Method::Third => obstruction3(alg, cfg),
        Method::Fourth => obstruction4(alg, cfg.covector_budget),
    }
}

/// Tries the methods in order 1, 2, 3, 4 and returns the first that holds,
/// or the certificates of all four if none does.
pub fn auto(alg: &LieAlgebra, cfg: &SearchConfig) -> Result<ObstructionCertificate, Vec<ObstructionCertificate>> {
    let mut failed = Vec::new();
    for m in Method::ALL {
        let c = run(alg, m, cfg);
        if c.verdict.holds() {
            return Ok(c);
        }
        failed.push(c);
    }
    Err(failed)
}

impl ObstructionCertificate {
    pub fn to_json(&self) -> Value {
        let witness = match &self.witness {
            Witness::First {
                x,
                y,
                u_basis,
                failing,
            } => json!({
                "X": report::vector(x),
                "Y": report::vector(y),
                "U_basis": report::forms(u_basis),
                "failing_pair": failing.map(|(i, j)| json!([i, j])),
            }),
            Witness::Second {
                closed_basis,
                offending,
            } => json!({
                "closed_4form_basis": report::forms(closed_basis),
                "offending": offending.map(|(i, m)| json!({"generator": i, "monomial": format!("e{m}")})),
            }),
            Witness::Third(d) => d.to_json(),
            Witness::Fourth {
                v,
                diagonal,
                closed_dimension,
            } => json!({
                "v": v.as_ref().map(|v| report::vector(v)),
                "B_vv": diagonal,
                "closed_4form_dimension": closed_dimension,
            }),
        };
        json!({
            "algebra": self.algebra,
            "method": self.method.number(),
            "method_name": self.method.name(),
            "verdict": self.verdict.as_str(),
            "witness": witness,
            "candidates_tried": self.candidates_tried,
            "rationale": self.rationale,
        })
    }
}

/// Re-derives the verdict of a certificate from its stored witness.
///
/// For the first and fourth obstructions only the recorded pair or
/// covector is evaluated; the second and third recompute their linear
/// algebra from the structure equations. A `holds_numeric` third
/// certificate reruns the seeded minimization it records.
pub fn replay(alg: &LieAlgebra, cert: &Value) -> Result<Verdict, ObstructionError> {
    let bad = |m: &str| ObstructionError::Malformed(m.to_string());
    let name = cert["algebra"].as_str().ok_or_else(|| bad("missing algebra"))?;
    if name != alg.name() {
        return Err(ObstructionError::WrongAlgebra {
            expected: alg.name().to_string(),
            found: name.to_string(),
        });
    }
    let method: Method = cert["method"]
        .as_u64()
        .map(|m| m.to_string())
        .ok_or_else(|| bad("missing method"))?
        .parse()?;
    let claimed = cert["verdict"]
        .as_str()
        .and_then(Verdict::parse)
        .ok_or_else(|| bad("missing verdict"))?;
    let w = &cert["witness"];
    let verdict = match method {
        Method::First => {
            if claimed == Verdict::NotApplicable && w["X"].is_null() {
                return Ok(Verdict::NotApplicable);
            }
            let x = report::parse_vector(&w["X"]).ok_or_else(|| bad("witness X"))?;
            let y = report::parse_vector(&w["Y"]).ok_or_else(|| bad("witness Y"))?;
            obstruction1(alg, &x, &y)?.verdict
        }
        Method::Second => obstruction2(alg).verdict,
        Method::Third => {
            let cfg = third::config_from_json(w).ok_or_else(|| bad("third-obstruction search data"))?;
            obstruction3(alg, &cfg).verdict
        }
        Method::Fourth => match report::parse_vector(&w["v"]) {
            Some(v) => fourth::check_covector(alg, &v).0,
            None => Verdict::NotApplicable,
        },
    };
    Ok(verdict)
}
