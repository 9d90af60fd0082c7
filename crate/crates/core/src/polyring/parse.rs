//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary ("*" unary)*
//! unary   := ("+" | "-") unary | power
//! power   := atom ("^" INTEGER)?
//! atom    := INTEGER ("/" INTEGER)? | VARIABLE | "(" expr ")"
//! ```
//!
//! Variables are `x, y, z` and, in four-variable rings, `w`. Juxtaposition is
//! not multiplication: `2x` is a syntax error. The `a/b` form only exists so
//! that printed rational coefficients parse back.

use num_bigint::BigInt;
use thiserror::Error;

use super::field::Field;
use super::monomial::{Monomial, VAR_NAMES};
use super::polynomial::{PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("exponent overflow at position {position}")]
    ExponentOverflow { position: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    position: start,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    num_vars: usize,
    field: Field,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn lift(
        &self,
        r: Result<Polynomial, PolyError>,
        position: usize,
    ) -> Result<Polynomial, ParseError> {
        r.map_err(|_| ParseError::ExponentOverflow { position })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            let at = self.bump().1;
            let rhs = self.unary()?;
            acc = self.lift(acc.checked_mul(&rhs), at)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump().0 {
            Tok::Int(n) => {
                let e =
                    u16::try_from(&n).map_err(|_| ParseError::ExponentOverflow { position: at })?;
                self.lift(base.pow(e as u32), at)
            }
            _ => Err(ParseError::Syntax {
                position: at,
                message: "expected a non-negative integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.offset();
        match self.bump().0 {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let den_at = self.offset();
                    let den = match self.bump().0 {
                        Tok::Int(d) => d,
                        _ => {
                            return Err(ParseError::Syntax {
                                position: den_at,
                                message: "expected an integer denominator".into(),
                            })
                        }
                    };
                    let c = self.field.from_ratio(&n, &den).ok_or(ParseError::Syntax {
                        position: den_at,
                        message: "denominator vanishes in the coefficient field".into(),
                    })?;
                    return Ok(Polynomial::constant(c, self.num_vars));
                }
                Ok(Polynomial::constant(
                    self.field.from_bigint(&n),
                    self.num_vars,
                ))
            }
            Tok::Ident(name) => match VAR_NAMES[..self.num_vars].iter().position(|v| *v == name) {
                Some(i) => Ok(Polynomial::monomial(
                    Monomial::var(i),
                    self.field.one(),
                    self.num_vars,
                )),
                None => Err(ParseError::UnknownVariable { name, position: at }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(ParseError::Syntax {
                position: at,
                message: "unexpected end of input".into(),
            }),
            t => Err(ParseError::Syntax {
                position: at,
                message: format!("unexpected token {t:?}"),
            }),
        }
    }
}

/// Parses `text` into a canonical polynomial in `num_vars` variables over `field`.
pub fn parse(text: &str, num_vars: usize, field: Field) -> Result<Polynomial, ParseError> {
    assert!((1..=VAR_NAMES.len()).contains(&num_vars));
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        num_vars,
        field,
    };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("expected an operator");
    }
    Ok(poly)
}
