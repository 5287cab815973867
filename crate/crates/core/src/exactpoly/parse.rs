//! Recursive-descent reader for the polynomial text grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := ident ('^' sint)?
//! coeff  := int ('/' uint)?
//! ```
//!
//! Whitespace between tokens is ignored.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Mono, Poly};
use super::rat::Rat;
use super::varspec::VarSpec;
use crate::error::{Error, ParseError, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        // ASCII digits only, so the slice is valid UTF-8
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return Err(self.err("expected a variable name")),
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        Ok((start, std::str::from_utf8(&self.src[start..self.pos]).unwrap()))
    }
}

impl Poly {
    /// Parses `text` in the ring `spec`. Printing the result and parsing it
    /// again yields the same polynomial.
    pub fn parse(text: &str, spec: &Arc<VarSpec>) -> Result<Poly> {
        parse_poly(text, spec)
    }
}

pub fn parse_poly(text: &str, spec: &Arc<VarSpec>) -> Result<Poly> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negate = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    loop {
        let (m, c) = parse_term(&mut cur, spec)?;
        terms.push((m, if negate { -c } else { c }));
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                negate = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negate = true;
            }
            Some(_) => return Err(cur.err("expected `+`, `-` or end of input").into()),
        }
    }
    Poly::from_terms(spec, terms)
}

fn parse_term(cur: &mut Cursor<'_>, spec: &Arc<VarSpec>) -> Result<(Mono, Rat)> {
    let mut mono = Mono::one(spec.len());
    let mut coeff = Rat::one();
    let mut need_factor = true;
    if cur.peek().is_some_and(|b| b.is_ascii_digit()) {
        let num = cur.digits()?;
        let den = if cur.eat(b'/') {
            let d = cur.digits()?;
            if d.is_zero() {
                return Err(cur.err("zero denominator").into());
            }
            d
        } else {
            BigInt::one()
        };
        coeff = Rat::new(num, den);
        need_factor = false;
        if !cur.eat(b'*') {
            return Ok((mono, coeff));
        }
    }
    loop {
        if !need_factor && !matches!(cur.peek(), Some(b) if b.is_ascii_alphabetic() || b == b'_') {
            return Err(cur.err("expected a variable after `*`").into());
        }
        let (at, name) = cur.ident()?;
        let idx = spec
            .index(name)
            .ok_or_else(|| ParseError::new(at, format!("unknown variable `{name}`")))?;
        let exp = if cur.eat(b'^') { parse_sint(cur)? } else { 1 };
        if exp < 0 && !spec.is_invertible(idx) {
            return Err(Error::Parse(ParseError::new(
                at,
                format!("negative exponent on non-invertible variable `{name}`"),
            )));
        }
        mono.0[idx] = mono.0[idx]
            .checked_add(exp)
            .ok_or_else(|| ParseError::new(at, "exponent overflow"))?;
        if !cur.eat(b'*') {
            return Ok((mono, coeff));
        }
        need_factor = true;
    }
}

fn parse_sint(cur: &mut Cursor<'_>) -> Result<i32, ParseError> {
    let neg = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    let at = cur.pos;
    let d = cur.digits()?;
    let d = if neg { -d } else { d };
    i32::try_from(d).map_err(|_| ParseError::new(at, "exponent out of range"))
}
