//! Recursive-descent parser for rational expressions such as
//! `(2*k)/(k - 1)` or `1/2*p0^2 - q`, generic over the target algebra.

use num_bigint::BigInt;

use super::{CoeffFrac, Param, Rational, Ring};
use crate::error::{Error, Result};

/// Target of the expression parser.
pub(crate) trait Algebra: Ring {
    fn try_div(&self, other: &Self) -> Result<Self>;
}

impl Algebra for CoeffFrac {
    fn try_div(&self, other: &Self) -> Result<Self> {
        self.div(other)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
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
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(text.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a, T> {
    tokens: Vec<Token>,
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Option<T>,
}

impl<T: Algebra> Parser<'_, T> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<T> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<T> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.try_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<T> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Token::Num(n)) = self.peek().cloned() else {
                return Err(Error::Parse("exponent must be a non-negative integer".into()));
            };
            self.pos += 1;
            let e: u32 = n
                .try_into()
                .map_err(|_| Error::Parse("exponent too large".into()))?;
            let mut acc = T::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<T> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(T::from_rational(&Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                (self.resolve)(&name).ok_or_else(|| Error::Parse(format!("unknown symbol `{name}`")))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `s` into `T`, resolving identifiers with `resolve`.
pub(crate) fn parse_with<T: Algebra>(s: &str, resolve: &dyn Fn(&str) -> Option<T>) -> Result<T> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        resolve,
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(value)
}

pub(crate) fn parse_coeff(s: &str) -> Result<CoeffFrac> {
    parse_with(s, &|name| name.parse::<Param>().ok().map(CoeffFrac::param))
}

/// Parses a plain rational such as `-3/4` (no parameters allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let value: CoeffFrac = parse_with(s, &|_| None)?;
    value
        .as_rational()
        .ok_or_else(|| Error::Parse(format!("`{s}` is not a rational number")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn parses_fractions_and_params() {
        let f: CoeffFrac = "(2*k)/(k - 1)".parse().unwrap();
        let k = CoeffFrac::param(Param::K);
        let want = k.scale(&rat(2, 1)).div(&(&k - &CoeffFrac::one())).unwrap();
        assert_eq!(f, want);
        let g: CoeffFrac = "1/2*p0^2 - -q".parse().unwrap();
        assert_eq!(g.to_string(), "1/2*p0^2 + q");
        assert!("k +".parse::<CoeffFrac>().is_err());
        assert!("x".parse::<CoeffFrac>().is_err());
        assert!(matches!("1/(k-k)".parse::<CoeffFrac>(), Err(Error::Pole { .. })));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert!(parse_rational("k").is_err());
    }
}
