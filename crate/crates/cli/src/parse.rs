//! Recursive-descent parser for polynomial expressions over `ℚ(i)[ℏ]`.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'i' | 'hbar' | coordinate | '(' expr ')'
//! ```
//!
//! Division is only by nonzero scalar constants, so `3/2*x1` is exact and
//! every output of [`PolyFunction::render`] parses back to the same value.

use qtwist_core::{BigInt, BigRational, GaussianRational, HbarPoly};
use qtwist_repr::PolyFunction;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown coordinate {name} at position {pos}")]
    UnknownCoordinate { name: String, pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), start));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) || c == '−' {
            out.push((Tok::Op(if c == '−' { '-' } else { c }), i));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    names: &'a [String],
    order: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn scalar(&self, c: GaussianRational) -> PolyFunction {
        PolyFunction::scalar(self.names.len(), self.order, c)
    }

    fn expr(&mut self) -> Result<PolyFunction, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.at += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Op('-') => {
                    self.at += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyFunction, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.at += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Op('/') => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.unary()?;
                    let inv = constant_part(&d)
                        .and_then(|c| c.inv())
                        .ok_or(ParseError::Syntax { pos, msg: "division only by a nonzero scalar constant".into() })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyFunction, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                self.at += 1;
                Ok(self.unary()?.neg())
            }
            Tok::Op('+') => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyFunction, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.at += 1;
        let k = match self.peek() {
            Tok::Int(k) => u32::try_from(k.clone()).or_else(|_| self.syntax("exponent too large"))?,
            _ => return self.syntax("expected a nonnegative integer exponent"),
        };
        self.at += 1;
        if *self.peek() == Tok::Op('^') {
            return self.syntax("chained exponents need parentheses");
        }
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> Result<PolyFunction, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.at += 1;
                Ok(self.scalar(GaussianRational::from_real(BigRational::from_integer(n))))
            }
            Tok::Ident(name) => {
                self.at += 1;
                let nv = self.names.len();
                match name.as_str() {
                    "i" => Ok(self.scalar(GaussianRational::i())),
                    "hbar" => Ok(PolyFunction::constant(nv, HbarPoly::monomial(1, GaussianRational::one(), self.order))),
                    _ => match self.names.iter().position(|n| *n == name) {
                        Some(k) => Ok(PolyFunction::coordinate(nv, self.order, k)),
                        None => Err(ParseError::UnknownCoordinate { name, pos }),
                    },
                }
            }
            Tok::Op('(') => {
                self.at += 1;
                let inner = self.expr()?;
                if *self.peek() != Tok::Op(')') {
                    return self.syntax("expected ')'");
                }
                self.at += 1;
                Ok(inner)
            }
            Tok::End => self.syntax("unexpected end of input"),
            Tok::Op(c) => self.syntax(format!("unexpected {c:?}")),
        }
    }
}

/// The value of a polynomial that is a constant scalar without `ℏ` terms.
fn constant_part(p: &PolyFunction) -> Option<GaussianRational> {
    if p.is_zero() {
        return Some(GaussianRational::zero());
    }
    let (e, c) = p.terms().iter().next()?;
    let scalar_only = p.len() == 1 && e.iter().all(|&k| k == 0) && c.coeffs().iter().skip(1).all(GaussianRational::is_zero);
    scalar_only.then(|| c.coeff(0).clone())
}

/// Parses `text` as a polynomial in the coordinates `names`, truncated at
/// `ℏ^order`.
pub fn parse_poly_expr(text: &str, names: &[String], order: usize) -> Result<PolyFunction, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, names, order };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(out)
}
