//! A small parser for commutative polynomial text such as `5*q1*D1*D2^3 - 10*q1*D2^4 + q2`.
//!
//! Terms are joined by `+`/`-`; a term is a `*`-separated product of an
//! optional rational coefficient and atoms `name` or `name^e`. Whitespace is
//! ignored. Variable names are checked against a caller-supplied alphabet.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// A monomial as exponents indexed like the alphabet passed to [`parse_poly`].
pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && f(self.src[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }
}

/// Parses `text` over the variables in `alphabet`. Like terms are merged and
/// zero terms dropped, so `"0"` gives the empty polynomial.
pub fn parse_poly(text: &str, alphabet: &[&str]) -> Result<Poly> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms: BTreeMap<Exponents, Rational> = BTreeMap::new();
    if lx.peek().is_none() {
        return Err(lx.err("empty expression"));
    }
    let mut first = true;
    loop {
        let mut sign = Rational::one();
        match lx.peek() {
            Some(b'+') => lx.pos += 1,
            Some(b'-') => {
                lx.pos += 1;
                sign = -sign;
            }
            Some(_) if first => {}
            Some(c) => return Err(lx.err(format!("expected '+' or '-', found '{}'", c as char))),
            None => break,
        }
        first = false;
        let (coef, exps) = parse_term(&mut lx, alphabet)?;
        let slot = terms.entry(exps).or_insert_with(Rational::zero);
        *slot += sign * coef;
    }
    terms.retain(|_, v| !v.is_zero());
    Ok(Poly {
        vars: alphabet.iter().map(|s| s.to_string()).collect(),
        terms,
    })
}

fn parse_term(lx: &mut Lexer, alphabet: &[&str]) -> Result<(Rational, Exponents)> {
    let mut coef = Rational::one();
    let mut exps = vec![0u32; alphabet.len()];
    loop {
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = lx.pos;
                let num = lx.take_while(|c| c.is_ascii_digit() || c == b'/');
                coef *= parse_rational(num).map_err(|_| Error::Parse {
                    position: start,
                    message: format!("bad number '{num}'"),
                })?;
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = lx.pos;
                let name = lx.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
                let slot = alphabet.iter().position(|v| *v == name).ok_or(Error::Parse {
                    position: start,
                    message: format!("unknown variable '{name}'"),
                })?;
                let mut e = 1;
                if lx.peek() == Some(b'^') {
                    lx.pos += 1;
                    let at = lx.pos;
                    let digits = lx.take_while(|c| c.is_ascii_digit());
                    e = digits.parse().map_err(|_| Error::Parse {
                        position: at,
                        message: "expected exponent after '^'".into(),
                    })?;
                }
                exps[slot] += e;
            }
            Some(c) => return Err(lx.err(format!("unexpected '{}'", c as char))),
            None => return Err(lx.err("unexpected end of expression")),
        }
        if lx.peek() == Some(b'*') {
            lx.pos += 1;
        } else {
            return Ok((coef, exps));
        }
    }
}

/// Renders a monomial as `name^e` factors joined by `*`.
pub fn format_monomial(vars: &[&str], exps: &[u32]) -> String {
    vars.iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// `name: body` lines with `#` comments stripped; returns `(line number, name, body)`.
pub fn named_lines(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, body) = line.split_once(':').ok_or(Error::Parse {
            position: i + 1,
            message: "expected 'name: expression'".into(),
        })?;
        out.push((i + 1, name.trim().to_string(), body.trim().to_string()));
    }
    Ok(out)
}
