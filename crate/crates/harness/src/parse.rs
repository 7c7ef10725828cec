//! Polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*        '/' only by nonzero constants
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'eps' | 'i' | variable | '(' expr ')'
//! ```

use singlab_core::{AlgNum, MPoly};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at column {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("division by a non-constant or zero at column {pos}")]
    BadDivision { pos: usize },
}

pub const DEFAULT_VARS: [&str; 5] = ["w", "x", "y", "z", "v"];

/// Parses with the default variables `w x y z v`.
pub fn parse_poly(text: &str) -> Result<MPoly, ParseError> {
    Parser::new(text, &DEFAULT_VARS).parse()
}

/// Parses allowing the given variable names in addition to the defaults.
pub fn parse_poly_with<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<MPoly, ParseError> {
    let mut all: Vec<&str> = DEFAULT_VARS.to_vec();
    all.extend(vars.iter().map(|v| v.as_ref()));
    Parser::new(text, &all).parse()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a [&'a str],
    lex_error: Option<ParseError>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, vars: &'a [&'a str]) -> Self {
        let mut toks = Vec::new();
        let mut lex_error = None;
        let chars: Vec<char> = text.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            let pos = k + 1;
            if c.is_whitespace() {
                k += 1;
            } else if c.is_ascii_digit() {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let s: String = chars[start..k].iter().collect();
                match s.parse() {
                    Ok(n) => toks.push((Tok::Int(n), pos)),
                    Err(_) => {
                        lex_error.get_or_insert(ParseError::Syntax { pos, msg: "integer literal too large".into() });
                    }
                }
            } else if c.is_ascii_alphabetic() {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                toks.push((Tok::Ident(chars[start..k].iter().collect()), pos));
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Op(c), pos));
                k += 1;
            } else {
                lex_error.get_or_insert(ParseError::Syntax { pos, msg: format!("unexpected character `{c}`") });
                k += 1;
            }
        }
        toks.push((Tok::End, chars.len() + 1));
        Parser { toks, at: 0, vars, lex_error }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax(&self, msg: &str) -> ParseError {
        ParseError::Syntax { pos: self.pos(), msg: msg.to_string() }
    }

    fn parse(mut self) -> Result<MPoly, ParseError> {
        if let Some(e) = self.lex_error.take() {
            return Err(e);
        }
        if *self.peek() == Tok::End {
            return Err(self.syntax("empty expression"));
        }
        let e = self.expr()?;
        if *self.peek() != Tok::End {
            return Err(self.syntax("unexpected trailing input"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    let pos = self.bump().1;
                    let d = self.unary()?;
                    let inv = d.as_constant().and_then(|c| c.inverse().ok()).ok_or(ParseError::BadDivision { pos })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, ParseError> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (Tok::Int(n), _) if n <= u32::MAX as i64 => Ok(base.pow(n as u32)),
            (_, pos) => Err(ParseError::Syntax { pos, msg: "exponent must be a non-negative integer".into() }),
        }
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        match self.bump() {
            (Tok::Int(n), _) => Ok(MPoly::constant(AlgNum::from_int(n))),
            (Tok::Ident(name), pos) => match name.as_str() {
                "eps" => Ok(MPoly::constant(AlgNum::eps())),
                "i" => Ok(MPoly::constant(AlgNum::i())),
                v if self.vars.contains(&v) => Ok(MPoly::var(v)),
                _ => Err(ParseError::UnknownIdentifier { pos, name }),
            },
            (Tok::Op('('), _) => {
                let e = self.expr()?;
                match self.bump() {
                    (Tok::Op(')'), _) => Ok(e),
                    (_, pos) => Err(ParseError::Syntax { pos, msg: "expected `)`".into() }),
                }
            }
            (Tok::End, pos) => Err(ParseError::Syntax { pos, msg: "unexpected end of input".into() }),
            (t, pos) => Err(ParseError::Syntax { pos, msg: format!("unexpected token {t:?}") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_examples() {
        let cp3 = parse_poly("z^3 + w*y^3 + w^2*x^3 - 3*w*x*y*z").unwrap();
        assert_eq!(cp3, singlab_core::catalog::cp3_equation());
        assert!(parse_poly("eps^2 + eps + 1").unwrap().is_zero());
        let ce = parse_poly("(z+x)*(z^2 + (w+y)*y^2)").unwrap();
        assert_eq!(ce.total_degree(), Some(4));
    }

    #[test]
    fn rationals_and_printing() {
        let f = parse_poly("x/2 - 3/4*y^2").unwrap();
        assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
        let g = parse_poly("(eps)*x - i").unwrap();
        assert_eq!(parse_poly(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_poly("x + q"), Err(ParseError::UnknownIdentifier { pos: 5, name: "q".into() }));
        assert!(matches!(parse_poly("x +"), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x / y"), Err(ParseError::BadDivision { pos: 3 })));
        assert!(matches!(parse_poly("x ^ y"), Err(ParseError::Syntax { pos: 5, .. })));
        assert!(matches!(parse_poly("x $ y"), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("(x"), Err(ParseError::Syntax { .. })));
        assert!(parse_poly_with("y0 + y1", &["y0", "y1"]).is_ok());
    }
}
