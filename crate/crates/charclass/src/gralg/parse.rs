//! Recursive-descent parser for the polynomial expression grammar.
//!
//! Grammar: identifiers over `[A-Za-z][A-Za-z0-9_]*`, operators `+`, `*`,
//! `^` with nonnegative integer exponents, parentheses, integer constants
//! reduced mod 2. Whitespace insensitive. Example: `a1^3 + a1*lambda`.

use super::PolyF2;
use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 1024;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Int(u64),
    Plus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<Option<(usize, Token)>> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return Ok(None);
        }
        let start = self.pos;
        let b = self.bytes[self.pos];
        let token = match b {
            b'+' => {
                self.pos += 1;
                Token::Plus
            }
            b'*' => {
                self.pos += 1;
                Token::Star
            }
            b'^' => {
                self.pos += 1;
                Token::Caret
            }
            b'(' => {
                self.pos += 1;
                Token::LParen
            }
            b')' => {
                self.pos += 1;
                Token::RParen
            }
            b'0'..=b'9' => {
                let mut value: u64 = 0;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(u64::from(self.bytes[self.pos] - b'0')))
                        .ok_or(Error::Parse {
                            offset: start,
                            message: "integer literal too large".to_string(),
                        })?;
                    self.pos += 1;
                }
                Token::Int(value)
            }
            c if c.is_ascii_alphabetic() => {
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Token::Ident(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
            }
            other => {
                return Err(Error::Parse {
                    offset: start,
                    message: format!("unexpected character `{}`", other as char),
                });
            }
        };
        Ok(Some((start, token)))
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Token) -> Result<()> {
        let offset = self.offset();
        match self.bump() {
            Some(ref t) if t == want => Ok(()),
            other => Err(Error::Parse {
                offset,
                message: format!("expected {want:?}, found {other:?}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<PolyF2> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Token::Plus) {
            self.bump();
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PolyF2> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            acc = acc.mul_raw(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyF2> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let offset = self.offset();
            match self.bump() {
                Some(Token::Int(e)) => {
                    if e > u64::from(MAX_EXPONENT) {
                        return Err(Error::Parse {
                            offset,
                            message: format!("exponent {e} exceeds the limit {MAX_EXPONENT}"),
                        });
                    }
                    Ok(base.pow_raw(e as u32))
                }
                other => Err(Error::Parse {
                    offset,
                    message: format!("expected integer exponent, found {other:?}"),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<PolyF2> {
        let offset = self.offset();
        match self.bump() {
            Some(Token::Ident(name)) => Ok(PolyF2::generator(&name)),
            Some(Token::Int(v)) => Ok(if v % 2 == 0 {
                PolyF2::zero()
            } else {
                PolyF2::one()
            }),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(&Token::RParen)?;
                Ok(inner)
            }
            other => Err(Error::Parse {
                offset,
                message: format!("expected identifier, constant or `(`, found {other:?}"),
            }),
        }
    }
}

/// Parse a polynomial expression; names are not checked against any
/// presentation here.
pub fn parse_poly_expr(text: &str) -> Result<PolyF2> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    while let Some(t) = lexer.next()? {
        tokens.push(t);
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse {
            offset: parser.offset(),
            message: "trailing input after expression".to_string(),
        });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::super::Monomial;
    use super::*;

    #[test]
    fn parses_spec_example() {
        let p = parse_poly_expr("a1^3 + a1*lambda").unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.contains(&Monomial::power("a1", 3)));
        assert!(p.contains(&Monomial::from_pairs([
            ("a1".to_string(), 1),
            ("lambda".to_string(), 1)
        ])));
    }

    #[test]
    fn constants_reduce_mod_2() {
        assert!(parse_poly_expr("0").unwrap().is_zero());
        assert_eq!(parse_poly_expr("1").unwrap(), PolyF2::one());
        assert!(parse_poly_expr("2").unwrap().is_zero());
        assert_eq!(parse_poly_expr("3").unwrap(), PolyF2::one());
        // mod-2 cancellation in sums
        assert!(parse_poly_expr("x + x").unwrap().is_zero());
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(
            parse_poly_expr("w1 ^ 2 * w2 + w3").unwrap(),
            parse_poly_expr("w1^2*w2+w3").unwrap()
        );
    }

    #[test]
    fn parentheses_and_products() {
        let p = parse_poly_expr("(x + y) * (x + y)").unwrap();
        // (x+y)^2 = x^2 + y^2 over F2
        assert_eq!(p, parse_poly_expr("x^2 + y^2").unwrap());
        assert_eq!(p, parse_poly_expr("(x+y)^2").unwrap());
    }

    #[test]
    fn exponent_zero_is_one() {
        assert_eq!(parse_poly_expr("x^0").unwrap(), PolyF2::one());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly_expr("").is_err());
        assert!(parse_poly_expr("x +").is_err());
        assert!(parse_poly_expr("x ^ y").is_err());
        assert!(parse_poly_expr("(x").is_err());
        assert!(parse_poly_expr("x y").is_err());
        assert!(parse_poly_expr("x$").is_err());
        assert!(parse_poly_expr("_x").is_err());
    }

    #[test]
    fn large_exponents_are_rejected() {
        assert!(parse_poly_expr("x^99999").is_err());
    }
}
