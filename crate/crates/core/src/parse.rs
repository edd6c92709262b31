//! Lexer and recursive-descent parser for gross-number expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := '-' term | factor (('*' | '/') factor)*
//! factor   := atom ('^' exponent)?
//! atom     := integer | 'g' | '①' | '(' expr ')'
//! exponent := '-'? integer ('/' integer)? | 'g' | '(' expr ')'
//! ```
//!
//! Division requires a single-term divisor, so `20/27` and `g/2` work while
//! `1/(g+1)` is rejected.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, ParseError, Result};
use crate::grossone::GrossValue;
use crate::rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Integer,
    Slash,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    GrossSymbol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// Character offset of the first character.
    pub position: usize,
}

pub fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let kind = match c {
            '/' => TokenKind::Slash,
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            '*' => TokenKind::Star,
            '^' => TokenKind::Caret,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            'g' | '①' => TokenKind::GrossSymbol,
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Integer,
                    lexeme: chars[start..i].iter().collect(),
                    position: start,
                });
                continue;
            }
            other => {
                return Err(Error::Lex {
                    position: i,
                    found: other,
                })
            }
        };
        tokens.push(Token {
            kind,
            lexeme: c.to_string(),
            position: i,
        });
        i += 1;
    }
    Ok(tokens)
}

/// Parses an expression into its canonical [`GrossValue`].
pub fn parse(input: &str) -> Result<GrossValue> {
    let tokens = tokenize(input)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        end: input.chars().count(),
    };
    let v = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(p.error_at(t, "operator or end of input"));
    }
    Ok(v)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn error_at(&self, t: &Token, expected: &str) -> Error {
        ParseError {
            position: t.position,
            expected: expected.into(),
            found: format!("{:?}", t.lexeme),
        }
        .into()
    }

    fn error_here(&self, expected: &str) -> Error {
        match self.peek() {
            Some(t) => self.error_at(t, expected),
            None => ParseError {
                position: self.end,
                expected: expected.into(),
                found: "end of input".into(),
            }
            .into(),
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<&'a Token> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.error_here(expected)),
        }
    }

    fn expr(&mut self) -> Result<GrossValue> {
        let mut acc = self.term()?;
        while let Some(kind @ (TokenKind::Plus | TokenKind::Minus)) = self.peek_kind() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if kind == TokenKind::Plus {
                acc.add(&rhs)
            } else {
                acc.sub(&rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GrossValue> {
        if self.peek_kind() == Some(TokenKind::Minus) {
            self.pos += 1;
            return Ok(self.term()?.neg());
        }
        let mut acc = self.factor()?;
        while let Some(kind @ (TokenKind::Star | TokenKind::Slash)) = self.peek_kind() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if kind == TokenKind::Star {
                acc.mul(&rhs)?
            } else {
                acc.div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GrossValue> {
        let base = self.atom()?;
        if self.peek_kind() != Some(TokenKind::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let exponent = self.exponent()?;
        raise(&base, &exponent)
    }

    fn atom(&mut self) -> Result<GrossValue> {
        match self.peek_kind() {
            Some(TokenKind::Integer) => Ok(self.integer()?.into()),
            Some(TokenKind::GrossSymbol) => {
                self.pos += 1;
                Ok(GrossValue::grossone())
            }
            Some(TokenKind::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(v)
            }
            _ => Err(self.error_here("number, 'g' or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let t = self.expect(TokenKind::Integer, "integer")?;
        Ok(t.lexeme.parse().expect("lexer yields digits"))
    }

    fn exponent(&mut self) -> Result<GrossValue> {
        match self.peek_kind() {
            Some(TokenKind::LParen) => self.atom(),
            Some(TokenKind::GrossSymbol) => self.atom(),
            Some(TokenKind::Minus | TokenKind::Integer) => {
                let neg = self.peek_kind() == Some(TokenKind::Minus);
                if neg {
                    self.pos += 1;
                }
                let numer = self.integer()?;
                let denom = if self.peek_kind() == Some(TokenKind::Slash) {
                    self.pos += 1;
                    let slash_at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.error_at(&self.tokens[slash_at], "nonzero denominator"));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                let q = BigRational::new(numer, denom);
                Ok(GrossValue::rational(if neg { -q } else { q }))
            }
            _ => Err(self.error_here("exponent")),
        }
    }
}

fn raise(base: &GrossValue, exponent: &GrossValue) -> Result<GrossValue> {
    if let Some(r) = exponent.as_rational() {
        return base.pow(&r);
    }
    let lin = exponent.as_gross_linear().ok_or_else(|| {
        Error::GrossUnsupported(format!("exponent {exponent} is not of the form a*g+b"))
    })?;
    let q = base.as_rational().ok_or_else(|| {
        Error::GrossUnsupported(format!(
            "gross base {base} raised to gross exponent {exponent}"
        ))
    })?;
    GrossValue::power_of(q, lin)
}
