use super::{GongSpec, LieAlgebra, NilpotentError, DIM};
use crate::exact_algebra::parse_rational;
use crate::kv::KvDoc;

/// Reads an algebra file:
///
/// ```text
/// name = 23457A
/// dim = 7
/// gong = "(0^2,-12,-13,-14,-15,-23)"
/// center = "e6,e7"
/// ```
///
/// `lambda` and `center` are optional.
pub fn parse_algebra_file(text: &str) -> Result<LieAlgebra, NilpotentError> {
    let doc = KvDoc::parse(text)?;
    doc.check_keys(&["name", "dim", "gong", "lambda", "center"])?;
    let name = doc.require("name")?;
    if let Some(d) = doc.get("dim") {
        if d.parse::<usize>() != Ok(DIM) {
            return Err(doc.value_error("dim", "only 7-dimensional algebras are supported").into());
        }
    }
    let lambda = doc
        .get("lambda")
        .map(|s| parse_rational(s).ok_or_else(|| doc.value_error("lambda", "not a rational")))
        .transpose()?;
    let spec = GongSpec::new(doc.require("gong")?);
    let mut alg = LieAlgebra::from_gong(name, &spec, lambda.as_ref())?;
    if let Some(c) = doc.get("center") {
        let idx = c
            .split(',')
            .map(|t| {
                t.trim()
                    .strip_prefix('e')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|i| (1..=DIM).contains(i))
                    .ok_or_else(|| doc.value_error("center", format!("bad basis vector `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        alg = alg.with_declared_center(idx);
    }
    Ok(alg)
}
