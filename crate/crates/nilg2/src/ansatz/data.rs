//! Stored structure rows, one file per algebra (and per dedicated
//! parameter value of a family).

use std::sync::OnceLock;

use crate::exact_algebra::{fmt_rational, parse_rational, Rational};
use crate::exterior::{parse_form, parse_form_at, KForm};
use crate::kv::KvDoc;
use crate::nilpotent::{lookup, LieAlgebra, DIM};
use crate::report::parse_vector_label;

use super::{AnsatzError, AnsatzInput};

macro_rules! embed {
    ($($file:literal),* $(,)?) => {
        &[$(($file, include_str!(concat!("../../data/structures/", $file)))),*]
    };
}

const FILES: &[(&str, &str)] = embed!(
    "12357A.kv", "12357B.kv", "12357B1.kv", "12357C.kv",
    "12457A.kv", "12457B.kv", "12457C.kv", "12457D.kv", "12457E.kv", "12457G.kv",
    "12457H.kv", "12457I.kv", "12457J.kv", "12457J1.kv", "12457K.kv", "12457L1.kv",
    "12457N.kv", "12457N_78-331.kv", "12457N1.kv", "12457N2.kv",
    "13457D.kv", "13457F.kv",
    "23457C.kv", "23457D.kv", "23457E.kv", "23457G.kv",
    "123457A.kv", "123457B.kv", "123457C.kv", "123457D.kv", "123457E.kv", "123457F.kv",
    "123457H.kv", "123457H1.kv", "123457I.kv", "123457I_1-2.kv",
);

/// A structure row as written: form literals are kept as text so that
/// family rows can be evaluated at any parameter value.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureData {
    pub algebra: String,
    /// Set for a row that applies to a single parameter value only.
    pub lambda: Option<Rational>,
    pub omega: String,
    pub psi_minus: String,
    pub eta: String,
    pub x: Option<Vec<Rational>>,
}

const KEYS: [&str; 6] = ["algebra", "lambda", "omega", "psi_minus", "eta", "X"];

pub fn parse_structure_file(text: &str) -> Result<StructureData, AnsatzError> {
    let doc = KvDoc::parse(text)?;
    doc.check_keys(&KEYS)?;
    let lambda = doc
        .get("lambda")
        .map(|s| parse_rational(s).ok_or_else(|| doc.value_error("lambda", "not a rational")))
        .transpose()?;
    let x = doc
        .get("X")
        .map(|s| parse_vector_label(s, DIM).ok_or_else(|| doc.value_error("X", "not a vector")))
        .transpose()?;
    let data = StructureData {
        algebra: doc.require("algebra")?.to_string(),
        lambda,
        omega: doc.require("omega")?.to_string(),
        psi_minus: doc.require("psi_minus")?.to_string(),
        eta: doc.require("eta")?.to_string(),
        x,
    };
    // Catch syntax errors at load time; parameter expressions are only
    // evaluated once a value is known.
    for (key, src, grade) in [("omega", &data.omega, 2), ("psi_minus", &data.psi_minus, 3)] {
        let f = parse_form(src, DIM).map_err(|e| doc.value_error(key, e))?;
        if f.grade() != grade {
            return Err(doc.value_error(key, format!("expected a {grade}-form")).into());
        }
    }
    Ok(data)
}

/// All stored rows, in file order.
pub fn structures() -> &'static [StructureData] {
    static ROWS: OnceLock<Vec<StructureData>> = OnceLock::new();
    ROWS.get_or_init(|| {
        FILES
            .iter()
            .map(|(name, text)| parse_structure_file(text).unwrap_or_else(|e| panic!("{name}: {e}")))
            .collect()
    })
}

/// The row for `algebra` at `lambda`: a dedicated row for that value if
/// there is one, the general row otherwise.
pub fn structure_for(algebra: &str, lambda: Option<&Rational>) -> Option<&'static StructureData> {
    let rows = || structures().iter().filter(|s| s.algebra.eq_ignore_ascii_case(algebra));
    rows()
        .find(|s| s.lambda.is_some() && s.lambda.as_ref() == lambda)
        .or_else(|| rows().find(|s| s.lambda.is_none()))
}

impl StructureData {
    /// Evaluates the row at `lambda` against an already built algebra.
    pub fn instantiate_on(&self, alg: LieAlgebra) -> Result<AnsatzInput, AnsatzError> {
        let lambda = alg.lambda().cloned();
        let field = |key: &'static str, src: &str, grade: usize| -> Result<KForm<Rational>, AnsatzError> {
            let f = parse_form_at(src, DIM, lambda.as_ref()).map_err(|source| AnsatzError::Form { key, source })?;
            if f.grade() != grade {
                return Err(AnsatzError::Grade { key, expected: grade });
            }
            Ok(f)
        };
        Ok(AnsatzInput {
            omega: field("omega", &self.omega, 2)?,
            psi_minus: field("psi_minus", &self.psi_minus, 3)?,
            eta: field("eta", &self.eta, 1)?,
            x: self.x.clone(),
            alg,
        })
    }

    /// Builds the catalog algebra named in the row and evaluates the row.
    pub fn instantiate(&self, lambda: Option<&Rational>) -> Result<AnsatzInput, AnsatzError> {
        let entry = lookup(&self.algebra).ok_or_else(|| AnsatzError::UnknownAlgebra(self.algebra.clone()))?;
        let lambda = match (&self.lambda, lambda) {
            (Some(own), Some(asked)) if own != asked => {
                return Err(AnsatzError::ParameterMismatch {
                    row: fmt_rational(own),
                    asked: fmt_rational(asked),
                })
            }
            (Some(own), _) => Some(own),
            (None, asked) => asked,
        };
        self.instantiate_on(entry.build(lambda)?)
    }
}
