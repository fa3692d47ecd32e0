use super::{Admissibility, GongSpec, LieAlgebra, NilpotentError};
use crate::exact_algebra::{fmt_rational, Rational};

/// A built-in algebra: Gong name, structure equations, declared center and
/// nilpotency step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub gong: &'static str,
    pub center: &'static [usize],
    pub step: usize,
    /// Admissible parameter range for families.
    pub family: Option<Admissibility>,
}

const fn entry(
    name: &'static str,
    gong: &'static str,
    center: &'static [usize],
    step: usize,
    family: Option<Admissibility>,
) -> CatalogEntry {
    CatalogEntry {
        name,
        gong,
        center,
        step,
        family,
    }
}

static CATALOG: [CatalogEntry; 45] = [
    entry("12357A", "(0^3,-12,-14-23,-15+34,-16+35)", &[7], 5, None),
    entry("12357B", "(0^3,-12,-14-23,-15+34,-16-23+35)", &[7], 5, None),
    entry("12357B1", "(0^3,-12,-14-23,-15+34,-16+23+35)", &[7], 5, None),
    entry("12357C", "(0^3,-12,-14-23,-15+34,-16-24+35)", &[7], 5, None),
    entry("12457A", "(0^2,-12,-13,0,-14-25,-16-35)", &[7], 5, None),
    entry("12457B", "(0^2,-12,-13,0,-14-25,-16-25-35)", &[7], 5, None),
    entry("12457C", "(0^2,-12,-13,0,-14-25,-26+34)", &[7], 5, None),
    entry("12457D", "(0^2,-12,-13,0,-14-25,-15-26+34)", &[7], 5, None),
    entry("12457E", "(0^2,-12,-13,0,-14-23-25,-16-24-35)", &[7], 5, None),
    entry("12457F", "(0^2,-12,-13,0,-14-23-25,-26+34)", &[7], 5, None),
    entry("12457G", "(0^2,-12,-13,0,-14-23-25,-15-26+34)", &[7], 5, None),
    entry("12457H", "(0^2,-12,-13,-23,-15-24,-16-34)", &[7], 5, None),
    entry("12457I", "(0^2,-12,-13,-23,-15-24,-16-25-34)", &[7], 5, None),
    entry("12457J", "(0^2,-12,-13,-23,-15-24,-14-16-25-34)", &[7], 5, None),
    entry("12457J1", "(0^2,-12,-13,-23,-15-24,-14-16+25-34)", &[7], 5, None),
    entry("12457K", "(0^2,-12,-13,-23,-15-24,-14-16-34)", &[7], 5, None),
    entry("12457L", "(0^2,-12,-13,-23,-15-24,-16-26-34+35)", &[7], 5, None),
    entry("12457L1", "(0^2,-12,-13,-23,14+25,-16+35)", &[7], 5, None),
    entry("12457N", "(0^2,-12,-13,-23,-15-24,-14-16-λ·25-26-34+35)", &[7], 5, Some(Admissibility::Any)),
    entry("12457N1", "(0^2,-12,-13,-23,14+25,-16-25+35)", &[7], 5, None),
    entry("12457N2", "(0^2,-12,-13,-23,14+25,-15-16-24-λ·25+35)", &[7], 5, Some(Admissibility::NonNegative)),
    entry("13457A", "(0^2,-12,-13,-14,0,-15-26)", &[7], 5, None),
    entry("13457B", "(0^2,-12,-13,-14,0,-15-23-26)", &[7], 5, None),
    entry("13457C", "(0^2,-12,-13,-14,0,-16-25+34)", &[7], 5, None),
    entry("13457D", "(0^2,-12,-13,-14-23,0,-15-24-26)", &[7], 5, None),
    entry("13457E", "(0^2,-12,-13,-14-23,0,-16-25+34)", &[7], 5, None),
    entry("13457F", "(0^2,-12,-13,-14,-23,-15-26)", &[7], 5, None),
    entry("13457G", "(0^2,-12,-13,-14,-23,-16-24-25+34)", &[7], 5, None),
    entry("13457I", "(0^2,-12,-13,-14,-23,-15-25-26+34)", &[7], 5, None),
    entry("23457A", "(0^2,-12,-13,-14,-15,-23)", &[6, 7], 5, None),
    entry("23457B", "(0^2,-12,-13,-14,-25+34,-23)", &[6, 7], 5, None),
    entry("23457C", "(0^2,-12,-13,-14,-15,-25+34)", &[6, 7], 5, None),
    entry("23457D", "(0^2,-12,-13,-14,-15-23,-25+34)", &[6, 7], 5, None),
    entry("23457E", "(0^2,-12,-13,-14-23,-15-24,-23)", &[6, 7], 5, None),
    entry("23457F", "(0^2,-12,-13,-14-23,-25+34,-23)", &[6, 7], 5, None),
    entry("23457G", "(0^2,-12,-13,-14-23,-15-24,-25+34)", &[6, 7], 5, None),
    entry("123457A", "(0^2,-12,-13,-14,-15,-16)", &[7], 6, None),
    entry("123457B", "(0^2,-12,-13,-14,-15,-16-23)", &[7], 6, None),
    entry("123457C", "(0^2,-12,-13,-14,-15,-16-25+34)", &[7], 6, None),
    entry("123457D", "(0^2,-12,-13,-14,-15-23,-16-24)", &[7], 6, None),
    entry("123457E", "(0^2,-12,-13,-14,-15-23,-16-23-24)", &[7], 6, None),
    entry("123457F", "(0^2,-12,-13,-14,-15-23,-16-24-25+34)", &[7], 6, None),
    entry("123457H", "(0^2,-12,-13,-14-23,-15-24,-16-23-25)", &[7], 6, None),
    entry("123457H1", "(0^2,-12,-13,-14-23,-15-24,16-23+25)", &[7], 6, None),
    entry("123457I", "(0^2,-12,-13,-14-23,-15-24,-16-λ·25+(λ-1)·34)", &[7], 6, Some(Admissibility::Any)),
];

pub fn catalog() -> &'static [CatalogEntry] {
    &CATALOG
}

/// Looks up an entry by Gong name, e.g. `23457B` or `12457N2`.
pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

impl CatalogEntry {
    pub fn spec(&self) -> GongSpec {
        GongSpec::new(self.gong).with_admissible(self.family.unwrap_or(Admissibility::Any))
    }

    pub fn is_family(&self) -> bool {
        self.family.is_some()
    }

    /// `12457N(78/331)` for family members, the plain name otherwise.
    pub fn instance_name(&self, lambda: Option<&Rational>) -> String {
        match lambda {
            Some(l) if self.is_family() => format!("{}({})", self.name, fmt_rational(l)),
            _ => self.name.to_string(),
        }
    }

    pub fn build(&self, lambda: Option<&Rational>) -> Result<LieAlgebra, NilpotentError> {
        Ok(LieAlgebra::from_gong(self.instance_name(lambda), &self.spec(), lambda)?
            .with_declared_center(self.center.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;

    #[test]
    fn sizes() {
        assert_eq!(catalog().len(), 45);
        assert_eq!(catalog().iter().filter(|e| e.step == 6).count(), 9);
        assert_eq!(catalog().iter().filter(|e| e.is_family()).count(), 3);
    }

    #[test]
    fn family_admissibility() {
        let n2 = lookup("12457N2").unwrap();
        assert!(matches!(n2.build(Some(&rat(-1, 1))), Err(NilpotentError::Inadmissible { .. })));
        assert!(n2.build(Some(&rat(0, 1))).is_ok());
        assert_eq!(n2.build(None).unwrap_err(), NilpotentError::MissingParameter);
        assert_eq!(
            lookup("23457A").unwrap().build(Some(&rat(1, 1))).unwrap_err(),
            NilpotentError::UnexpectedParameter
        );
        let g = lookup("12457N").unwrap().build(Some(&rat(78, 331))).unwrap();
        assert_eq!(g.name(), "12457N(78/331)");
    }
}
