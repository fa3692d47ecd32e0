//! Rendering of exact values for the machine-readable report, and the
//! inverse parsing used when replaying certificates.

use serde_json::{json, Value};

use crate::exact_algebra::{fmt_rational, parse_rational, Matrix, QuadScalar, Rational};
use crate::exterior::{parse_form, KForm};

pub fn rational(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

pub fn quad(q: &QuadScalar) -> Value {
    Value::String(q.to_string())
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn form(f: &KForm<Rational>) -> Value {
    if f.is_zero() {
        Value::String("0".into())
    } else {
        Value::String(f.to_string())
    }
}

pub fn forms(fs: &[KForm<Rational>]) -> Value {
    Value::Array(fs.iter().map(form).collect())
}

pub fn matrix(m: &Matrix<Rational>) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

pub fn quad_matrix(m: &Matrix<QuadScalar>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(quad).collect()))
            .collect(),
    )
}

/// Compact label for a vector: `e1`, `e6+e7`, `2e1-e3` and so on.
pub fn vector_label(v: &[Rational]) -> String {
    let f = KForm::from_coords(v.len(), 1, v);
    if f.is_zero() {
        "0".into()
    } else {
        f.to_string().replace(' ', "").replace('*', "")
    }
}

pub fn parse_vector(v: &Value) -> Option<Vec<Rational>> {
    v.as_array()?
        .iter()
        .map(|x| x.as_str().and_then(parse_rational))
        .collect()
}

/// Inverse of [`vector_label`].
pub fn parse_vector_label(s: &str, dim: usize) -> Option<Vec<Rational>> {
    let f = parse_form(s, dim).ok()?;
    (f.grade() == 1).then(|| f.to_coords())
}

pub fn parse_form_value(v: &Value, dim: usize) -> Option<KForm<Rational>> {
    let s = v.as_str()?;
    if s == "0" {
        return None;
    }
    parse_form(s, dim).ok()
}

/// Serializes with sorted keys and a trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn summary_counts<'a>(verdicts: impl Iterator<Item = &'a str>) -> Value {
    let mut m = serde_json::Map::new();
    for v in verdicts {
        let e = m.entry(v.to_string()).or_insert(json!(0));
        *e = json!(e.as_u64().unwrap_or(0) + 1);
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;

    #[test]
    fn rationals_and_vectors() {
        assert_eq!(rational(&rat(-3, 6)), json!("-1/2"));
        let v = vec![rat(1, 1), rat(0, 1), rat(-2, 3)];
        assert_eq!(parse_vector(&vector(&v)).unwrap(), v);
        assert_eq!(vector_label(&v), "e1-2/3e3");
        assert_eq!(parse_vector_label("e1-2/3e3", 3).unwrap(), v);
    }

    #[test]
    fn keys_are_sorted() {
        let v = json!({"b": 1, "a": 2});
        assert_eq!(canonical(&v), "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
    }
}
