//! Form literals: `-1*e13 + e24 - 2/5*e56`.
//!
//! A coefficient is a rational literal or one parenthesised expression in
//! the family parameter `λ` (also written `L` or `lambda`), such as
//! `((17λ-48)/32)*e4`.

use num_traits::{One, Zero};
use thiserror::Error;

use super::{KForm, Mono};
use crate::exact_algebra::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{msg} at position {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub(crate) struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(s: &str) -> Self {
        Self {
            chars: s.chars().map(|c| if c == '−' { '-' } else { c }).collect(),
            pos: 0,
        }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += c.is_some() as usize;
        c
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    pub(crate) fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    pub(crate) fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    /// `p` or `p/q` with no sign.
    pub(crate) fn rational_literal(&mut self) -> Result<Rational, ParseError> {
        let start = self.pos;
        let n = self.digits();
        if n.is_empty() {
            return self.err("expected a number");
        }
        let num: Rational = Rational::from_integer(n.parse().expect("digits"));
        if self.peek() == Some('/') && self.chars.get(self.pos + 1).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
            let d = self.digits();
            let den: Rational = Rational::from_integer(d.parse().expect("digits"));
            if den.is_zero() {
                self.pos = start;
                return self.err("zero denominator");
            }
            return Ok(num / den);
        }
        Ok(num)
    }

    fn lambda_token(&mut self) -> bool {
        self.skip_ws();
        match self.peek() {
            Some('λ') | Some('L') => {
                self.pos += 1;
                true
            }
            Some('l') if self.chars[self.pos..].starts_with(&['l', 'a', 'm', 'b', 'd', 'a']) => {
                self.pos += 6;
                true
            }
            _ => false,
        }
    }
}

/// Evaluates `expr` (sum of products of numbers, `λ` and parentheses) at
/// the given parameter value.
pub(crate) fn eval_expr(c: &mut Cursor, lambda: Option<&Rational>) -> Result<Rational, ParseError> {
    let mut acc = eval_product(c, lambda)?;
    loop {
        if c.eat('+') {
            acc += eval_product(c, lambda)?;
        } else if c.eat('-') {
            acc -= eval_product(c, lambda)?;
        } else {
            return Ok(acc);
        }
    }
}

fn eval_product(c: &mut Cursor, lambda: Option<&Rational>) -> Result<Rational, ParseError> {
    let mut acc = eval_unary(c, lambda)?;
    loop {
        c.skip_ws();
        match c.peek() {
            Some('*') | Some('·') | Some('⋅') => {
                c.bump();
                acc *= eval_unary(c, lambda)?;
            }
            Some('/') => {
                c.bump();
                let at = c.pos();
                let d = eval_unary(c, lambda)?;
                if d.is_zero() {
                    return Err(ParseError {
                        pos: at,
                        msg: "division by zero (excluded parameter value)".into(),
                    });
                }
                acc /= d;
            }
            // Implicit multiplication: `17λ`, `2(λ-1)`.
            Some('(') | Some('λ') | Some('L') | Some('l') => {
                acc *= eval_unary(c, lambda)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn eval_unary(c: &mut Cursor, lambda: Option<&Rational>) -> Result<Rational, ParseError> {
    if c.eat('-') {
        return Ok(-eval_unary(c, lambda)?);
    }
    if c.eat('+') {
        return eval_unary(c, lambda);
    }
    if c.eat('(') {
        let v = eval_expr(c, lambda)?;
        if !c.eat(')') {
            return c.err("expected ')'");
        }
        return Ok(v);
    }
    let at = c.pos();
    if c.lambda_token() {
        return match lambda {
            Some(l) => Ok(l.clone()),
            None => Err(ParseError {
                pos: at,
                msg: "parameter λ used but no value given".into(),
            }),
        };
    }
    c.skip_ws();
    let n = c.digits();
    if n.is_empty() {
        return c.err("expected a number, λ or '('");
    }
    Ok(Rational::from_integer(n.parse().expect("digits")))
}

/// Parses a homogeneous form literal on a `dim`-dimensional space.
pub fn parse_form(s: &str, dim: usize) -> Result<KForm<Rational>, ParseError> {
    parse_form_at(s, dim, None)
}

/// As [`parse_form`], evaluating parameter expressions at `lambda`.
pub fn parse_form_at(
    s: &str,
    dim: usize,
    lambda: Option<&Rational>,
) -> Result<KForm<Rational>, ParseError> {
    let mut c = Cursor::new(s);
    let mut terms: Vec<(Mono, Rational, usize)> = Vec::new();
    let mut first = true;
    loop {
        if c.at_end() {
            if first {
                return c.err("empty form");
            }
            break;
        }
        let mut sign = Rational::one();
        if c.eat('-') {
            sign = -sign;
        } else if !c.eat('+') && !first {
            return c.err("expected '+' or '-'");
        }
        c.skip_ws();
        let coef = match c.peek() {
            Some('(') => {
                c.bump();
                let v = eval_expr(&mut c, lambda)?;
                if !c.eat(')') {
                    return c.err("expected ')'");
                }
                Some(v)
            }
            Some(d) if d.is_ascii_digit() => Some(c.rational_literal()?),
            _ => None,
        };
        if coef.is_some() {
            c.skip_ws();
            if matches!(c.peek(), Some('*') | Some('·')) {
                c.bump();
            }
        }
        c.skip_ws();
        if c.peek() == Some('0') && coef.is_none() {
            return c.err("unexpected '0'");
        }
        if c.peek() != Some('e') {
            return c.err("expected 'e' followed by indices");
        }
        c.bump();
        let start = c.pos();
        let idx = c.digits();
        if idx.is_empty() {
            return c.err("expected indices after 'e'");
        }
        let mut prev = 0;
        let mut ids = Vec::new();
        for (k, ch) in idx.chars().enumerate() {
            let i = ch.to_digit(10).expect("digit") as usize;
            if i == 0 || i > dim {
                return Err(ParseError {
                    pos: start + k,
                    msg: format!("index {i} out of range 1..={dim}"),
                });
            }
            if i <= prev {
                return Err(ParseError {
                    pos: start + k,
                    msg: "indices must be strictly increasing".into(),
                });
            }
            prev = i;
            ids.push(i);
        }
        let m = Mono::from_indices(&ids).expect("validated indices");
        terms.push((m, sign * coef.unwrap_or_else(Rational::one), start));
        first = false;
    }
    let grade = terms[0].0.grade();
    if let Some((_, _, at)) = terms.iter().find(|(m, _, _)| m.grade() != grade) {
        return Err(ParseError {
            pos: *at,
            msg: "form is not homogeneous".into(),
        });
    }
    Ok(KForm::from_terms(
        dim,
        grade,
        terms.into_iter().map(|(m, c, _)| (m, c)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;

    #[test]
    fn accepts_the_literal_grammar() {
        let a = parse_form("-1*e13 + 1*e24 - 2/5*e56", 7).unwrap();
        let b = parse_form("-e13+e24-2/5e56", 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coeff(Mono::from_indices(&[5, 6]).unwrap()), rat(-2, 5));
        assert_eq!(parse_form("−e12", 6).unwrap().grade(), 2);
    }

    #[test]
    fn rejects_bad_indices() {
        let e = parse_form("e13 + e31", 7).unwrap_err();
        assert_eq!(e.pos, 8);
        assert!(parse_form("e18", 7).is_err());
        assert!(parse_form("e17", 6).is_err());
        assert!(parse_form("e1 + e23", 7).is_err());
        assert!(parse_form("e1 e2", 7).is_err());
        assert!(parse_form("", 7).is_err());
    }

    #[test]
    fn parameter_expressions() {
        let l = rat(2, 1);
        let f = parse_form_at("((17λ-48)/32)*e4 + (1/(2L-1))*e7", 7, Some(&l)).unwrap();
        assert_eq!(f.coeff(Mono::single(4)), rat(-14, 32));
        assert_eq!(f.coeff(Mono::single(7)), rat(1, 3));
        let half = rat(1, 2);
        assert!(parse_form_at("(1/(2λ-1))*e7", 7, Some(&half)).is_err());
        assert!(parse_form("(λ)*e7", 7).is_err());
    }
}
