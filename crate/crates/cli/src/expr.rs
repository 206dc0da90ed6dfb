//! Expressions over the cohomology rings.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power ('*' power)*
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | 's[' INT (',' INT)* ']' | 's[]' | '(' expr ')'
//! ```
//!
//! Subtraction is accepted only when the caller allows it (integer rings).

use std::fmt;

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset of the offending token.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String, usize),
    Schubert(Vec<u32>, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Schubert(Vec<u32>),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Schubert(_) => write!(f, "s[...]"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, i)),
            b'-' => out.push((Tok::Minus, i)),
            b'*' => out.push((Tok::Star, i)),
            b'^' => out.push((Tok::Caret, i)),
            b'(' => out.push((Tok::LParen, i)),
            b')' => out.push((Tok::RParen, i)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            b's' if bytes.get(i + 1) == Some(&b'[') => {
                let close = src[i..].find(']').map(|k| i + k);
                let Some(close) = close else {
                    return err(start, "unterminated partition");
                };
                let body = &src[i + 2..close];
                let mut parts = Vec::new();
                if !body.trim().is_empty() {
                    let mut offset = i + 2;
                    for piece in body.split(',') {
                        let t = piece.trim();
                        match t.parse::<u32>() {
                            Ok(p) => parts.push(p),
                            Err(_) => return err(offset, format!("invalid partition part `{t}`")),
                        }
                        offset += piece.len() + 1;
                    }
                }
                out.push((Tok::Schubert(parts), start));
                i = close + 1;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let c = src[i..].chars().next().expect("in bounds");
                return err(i, format!("unexpected character `{c}`"));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    allow_minus: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn minus(&mut self) -> Result<bool, ParseError> {
        if self.peek() != Some(&Tok::Minus) {
            return Ok(false);
        }
        if !self.allow_minus {
            return err(self.offset(), "subtraction is not available with mod-2 coefficients");
        }
        self.pos += 1;
        Ok(true)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let neg = self.minus()?;
        let mut lhs = self.term()?;
        if neg {
            lhs = Expr::Neg(Box::new(lhs));
        }
        loop {
            if self.peek() == Some(&Tok::Plus) {
                self.pos += 1;
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.minus()? {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        match self.toks.get(self.pos) {
            Some((Tok::Int(n), _)) => {
                let e = u32::try_from(n).or_else(|_| err(at, "exponent too large"))?;
                self.pos += 1;
                Ok(Expr::Pow(Box::new(base), e))
            }
            Some((t, _)) => err(at, format!("expected an exponent, found `{t}`")),
            None => err(at, "expected an exponent, found end of input"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return err(at, "unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Ident(s) => Ok(Expr::Var(s, at)),
            Tok::Schubert(p) => Ok(Expr::Schubert(p, at)),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return err(self.offset(), "expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            t => err(at, format!("unexpected `{t}`")),
        }
    }
}

pub fn parse(src: &str, allow_minus: bool) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        allow_minus,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        let (t, at) = &p.toks[p.pos];
        return err(*at, format!("unexpected `{t}`"));
    }
    Ok(e)
}

/// Evaluation of an [`Expr`] in some ring.
pub trait Eval {
    type Value: Clone;
    type Error: From<ParseError>;

    fn int(&self, n: &BigInt) -> Self::Value;
    fn var(&self, name: &str, at: usize) -> Result<Self::Value, Self::Error>;
    fn schubert(&self, parts: &[u32], at: usize) -> Result<Self::Value, Self::Error>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn neg(&self, a: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;

    fn pow(&self, a: &Self::Value, e: u32) -> Result<Self::Value, Self::Error> {
        let mut acc = self.int(&BigInt::from(1));
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    fn eval(&self, e: &Expr) -> Result<Self::Value, Self::Error> {
        Ok(match e {
            Expr::Int(n) => self.int(n),
            Expr::Var(s, at) => self.var(s, *at)?,
            Expr::Schubert(p, at) => self.schubert(p, *at)?,
            Expr::Add(a, b) => self.add(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Sub(a, b) => {
                let nb = self.neg(&self.eval(b)?)?;
                self.add(&self.eval(a)?, &nb)?
            }
            Expr::Neg(a) => self.neg(&self.eval(a)?)?,
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Pow(a, k) => self.pow(&self.eval(a)?, *k)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(s: &str, at: usize) -> Box<Expr> {
        Box::new(Expr::Var(s.into(), at))
    }

    #[test]
    fn precedence() {
        let e = parse("c1 + c2*h^2", false).unwrap();
        let rhs = Expr::Mul(var("c2", 5), Box::new(Expr::Pow(var("h", 8), 2)));
        assert_eq!(e, Expr::Add(var("c1", 0), Box::new(rhs)));
    }

    #[test]
    fn left_associative() {
        let e = parse("c1*c2*h", false).unwrap();
        assert_eq!(e, Expr::Mul(Box::new(Expr::Mul(var("c1", 0), var("c2", 3))), var("h", 6)));
    }

    #[test]
    fn partitions() {
        assert_eq!(parse("s[2, 1]", true).unwrap(), Expr::Schubert(vec![2, 1], 0));
        assert_eq!(parse("s[]", true).unwrap(), Expr::Schubert(vec![], 0));
        assert_eq!(parse("s[2,x]", true).unwrap_err().position, 4);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("c1 - c2", false).unwrap_err().position, 3);
        assert!(parse("c1 - c2", true).is_ok());
        assert_eq!(parse("c1 + ", false).unwrap_err().position, 5);
        assert_eq!(parse("c1 ^ c2", false).unwrap_err().position, 5);
        assert_eq!(parse("(c1 + c2", false).unwrap_err().position, 8);
        assert_eq!(parse("c1 c2", false).unwrap_err().position, 3);
        assert_eq!(parse("c1 % 2", false).unwrap_err().position, 3);
        assert_eq!(parse("s[1", false).unwrap_err().position, 0);
    }
}
