//! Gong notation: `(0^3,-12,-14-23,-15+34,-16+35)` lists `de¹, …, de⁷`.

use num_traits::{One, Zero};

use crate::exact_algebra::Rational;
use crate::exterior::{eval_expr, Cursor, KForm, Mono, ParseError};

/// Which parameter values a family admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Any,
    NonNegative,
}

impl Admissibility {
    pub fn admits(self, lambda: &Rational) -> bool {
        match self {
            Admissibility::Any => true,
            Admissibility::NonNegative => *lambda >= Rational::zero(),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Admissibility::Any => "λ ∈ Q",
            Admissibility::NonNegative => "λ ≥ 0",
        }
    }
}

/// Structure equations in Gong notation, with the admissible range of the
/// family parameter when the text mentions `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GongSpec {
    pub raw: String,
    pub admissible: Admissibility,
}

impl GongSpec {
    pub fn new(raw: impl Into<String>) -> Self {
        Self {
            raw: raw.into(),
            admissible: Admissibility::Any,
        }
    }

    pub fn with_admissible(mut self, a: Admissibility) -> Self {
        self.admissible = a;
        self
    }

    pub fn has_parameter(&self) -> bool {
        self.raw.contains('λ') || self.raw.contains('L') || self.raw.contains("lambda")
    }
}

/// Parses the seven differentials; `λ` terms are evaluated at `lambda`.
pub fn parse_differentials(
    raw: &str,
    lambda: Option<&Rational>,
) -> Result<Vec<KForm<Rational>>, ParseError> {
    let mut c = Cursor::new(raw);
    if !c.eat('(') {
        return c.err("expected '('");
    }
    let mut out = Vec::new();
    loop {
        c.skip_ws();
        let start = c.pos();
        if c.peek() == Some('0') {
            c.bump();
            c.skip_ws();
            let count = if c.eat('^') {
                c.skip_ws();
                let k = c.digits();
                match k.parse::<usize>() {
                    Ok(k) if k > 0 => k,
                    _ => return c.err("expected a repeat count after '^'"),
                }
            } else {
                1
            };
            c.skip_ws();
            if !matches!(c.peek(), Some(',') | Some(')')) {
                return Err(ParseError {
                    pos: start,
                    msg: "a zero entry cannot carry further terms".into(),
                });
            }
            out.extend((0..count).map(|_| KForm::zero(7, 2)));
        } else {
            out.push(parse_entry(&mut c, lambda)?);
        }
        if c.eat(',') {
            continue;
        }
        if c.eat(')') {
            break;
        }
        return c.err("expected ',' or ')'");
    }
    if !c.at_end() {
        return c.err("trailing input");
    }
    if out.len() != 7 {
        return Err(ParseError {
            pos: 0,
            msg: format!("expected 7 entries after expansion, found {}", out.len()),
        });
    }
    Ok(out)
}

fn parse_entry(c: &mut Cursor, lambda: Option<&Rational>) -> Result<KForm<Rational>, ParseError> {
    let mut form = KForm::zero(7, 2);
    let mut first = true;
    loop {
        c.skip_ws();
        if matches!(c.peek(), Some(',') | Some(')') | None) {
            if first {
                return c.err("empty entry");
            }
            return Ok(form);
        }
        let mut coef = Rational::one();
        if c.eat('-') {
            coef = -coef;
        } else if !c.eat('+') && !first {
            return c.err("expected '+' or '-'");
        }
        first = false;
        c.skip_ws();
        let at = c.pos();
        let digits_ahead = c.peek().is_some_and(|ch| ch.is_ascii_digit());
        let pair = if digits_ahead {
            let d = c.digits();
            if matches!(c.peek(), Some('/') | Some('*') | Some('·') | Some('⋅')) {
                // A numeric coefficient.
                let mut sub = Cursor::new(&d);
                let mut v = sub.rational_literal()?;
                if c.peek() == Some('/') {
                    c.bump();
                    let den = c.digits();
                    let den: Rational = match den.parse::<u64>() {
                        Ok(x) if x > 0 => Rational::from_integer(x.into()),
                        _ => return c.err("bad denominator"),
                    };
                    v /= den;
                }
                coef *= v;
                expect_times(c)?;
                pair_digits(c)?
            } else {
                (d, at)
            }
        } else {
            coef *= eval_coefficient(c, lambda)?;
            expect_times(c)?;
            pair_digits(c)?
        };
        let (d, at) = pair;
        let ids: Vec<usize> = d.chars().map(|ch| ch.to_digit(10).unwrap() as usize).collect();
        if ids.len() != 2 {
            return Err(ParseError {
                pos: at,
                msg: "expected a two-digit index pair".into(),
            });
        }
        if ids[0] == 0 || ids[1] > 7 || ids[0] >= ids[1] {
            return Err(ParseError {
                pos: at,
                msg: format!("index pair {d} must satisfy 1 <= i < j <= 7"),
            });
        }
        let m = Mono::from_indices(&ids).expect("validated pair");
        form = form.add(&KForm::monomial(7, m, coef));
    }
}

/// `λ`, `(expr)`; multiplication sign handled by the caller.
fn eval_coefficient(c: &mut Cursor, lambda: Option<&Rational>) -> Result<Rational, ParseError> {
    let at = c.pos();
    match c.peek() {
        Some('(') => {
            c.bump();
            let v = eval_expr(c, lambda)?;
            if !c.eat(')') {
                return c.err("expected ')'");
            }
            Ok(v)
        }
        Some('λ') | Some('L') | Some('l') => {
            let mut sub = String::new();
            while let Some(ch) = c.peek().filter(|ch| ch.is_alphabetic()) {
                sub.push(ch);
                c.bump();
            }
            if !matches!(sub.as_str(), "λ" | "L" | "lambda") {
                return Err(ParseError {
                    pos: at,
                    msg: format!("unknown symbol '{sub}'"),
                });
            }
            lambda.cloned().ok_or(ParseError {
                pos: at,
                msg: "parameter λ used but no value given".into(),
            })
        }
        _ => c.err("expected a term"),
    }
}

fn expect_times(c: &mut Cursor) -> Result<(), ParseError> {
    c.skip_ws();
    if matches!(c.peek(), Some('*') | Some('·') | Some('⋅')) {
        c.bump();
    }
    Ok(())
}

fn pair_digits(c: &mut Cursor) -> Result<(String, usize), ParseError> {
    c.skip_ws();
    let at = c.pos();
    let d = c.digits();
    if d.is_empty() {
        return c.err("expected an index pair");
    }
    Ok((d, at))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;
    use crate::exterior::parse_form;

    #[test]
    fn worked_example() {
        let d = parse_differentials("(0^3,−12,−14−23,−15+34,−16+35)", None).unwrap();
        assert!(d[..3].iter().all(KForm::is_zero));
        assert_eq!(d[3], parse_form("-e12", 7).unwrap());
        assert_eq!(d[4], parse_form("-e14 - e23", 7).unwrap());
        assert_eq!(d[5], parse_form("-e15 + e34", 7).unwrap());
        assert_eq!(d[6], parse_form("-e16 + e35", 7).unwrap());
    }

    #[test]
    fn parameter_terms() {
        let l = rat(78, 331);
        let d = parse_differentials("(0^2,-12,-13,-23,-15-24,-14-16-λ·25-26-34+35)", Some(&l)).unwrap();
        assert_eq!(d[6].coeff(Mono::from_indices(&[2, 5]).unwrap()), rat(-78, 331));
        let l = rat(3, 1);
        let d = parse_differentials("(0^2,-12,-13,-14-23,-15-24,-16-λ·25+(λ-1)·34)", Some(&l)).unwrap();
        assert_eq!(d[6].coeff(Mono::from_indices(&[3, 4]).unwrap()), rat(2, 1));
        assert!(parse_differentials("(0^6,-λ·12)", None).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_differentials("(0^3,-12,-14-32,-15+34,-16+35)", None).unwrap_err();
        assert_eq!(e.pos, 13);
        assert!(parse_differentials("(0^3,-12)", None).is_err());
        assert!(parse_differentials("(0^7", None).is_err());
        assert!(parse_differentials("(0^7)", None).unwrap().iter().all(KForm::is_zero));
        assert!(parse_differentials("(0^3,-123,0^3)", None).is_err());
    }
}
