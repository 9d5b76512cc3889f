//! Recursive-descent parser for polynomial expressions.
//!
//! Accepts the canonical printed form plus parentheses and unary minus:
//! `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
//! `factor := base ('^' uint)?`, `base := uint ('/' uint)? | var | '(' expr ')' | '-' factor`.

use crate::error::{Error, Result};
use crate::polyring::field::{FieldElem, FieldSpec};
use crate::polyring::poly::{Poly, RingCtx};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::SyntaxError { line: self.line, col: self.col, msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
            self.bump();
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<u64>().map_err(|_| self.err("integer too large"))
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let c = self.peek()?;
        if !(c.is_ascii_alphabetic() || c == b'_') {
            return None;
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.bump();
        }
        Some(String::from_utf8(self.src[start..self.pos].to_vec()).unwrap())
    }
}

fn coeff_from_u64(ring: &RingCtx, n: u64) -> FieldElem {
    match ring.field() {
        FieldSpec::Rationals => {
            FieldElem::Rat(num_rational::BigRational::from(num_bigint::BigInt::from(n)))
        }
        FieldSpec::PrimeField(p) => {
            let p = p as u64;
            FieldSpec::PrimeField(p as u32).from_int((n % p) as i64)
        }
    }
}

fn parse_base(ring: &RingCtx, cur: &mut Cursor) -> Result<Poly> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'(') => {
            cur.bump();
            let inner = parse_expr(ring, cur)?;
            if !cur.eat(b')') {
                return Err(cur.err("expected `)`"));
            }
            Ok(inner)
        }
        Some(b'-') => {
            cur.bump();
            Ok(parse_factor(ring, cur)?.neg())
        }
        Some(b'0'..=b'9') => {
            let num = cur.uint()?;
            cur.skip_ws();
            if cur.peek() == Some(b'/') {
                cur.bump();
                let den = cur.uint()?;
                if den == 0 {
                    return Err(cur.err("zero denominator"));
                }
                let n = ring.constant(coeff_from_u64(ring, num));
                let d = coeff_from_u64(ring, den);
                if d.is_zero() {
                    return Err(cur.err("denominator vanishes in this field"));
                }
                let inv = d.inv().expect("nonzero");
                Ok(n.scale(&inv))
            } else {
                Ok(ring.constant(coeff_from_u64(ring, num)))
            }
        }
        _ => {
            if let Some(name) = cur.ident() {
                match ring.var_index(&name) {
                    Some(i) => Ok(ring.var(i)),
                    None => Err(Error::UnknownVariable(name)),
                }
            } else {
                Err(cur.err("expected a coefficient, variable or `(`"))
            }
        }
    }
}

fn parse_factor(ring: &RingCtx, cur: &mut Cursor) -> Result<Poly> {
    let base = parse_base(ring, cur)?;
    if cur.eat(b'^') {
        let e = cur.uint()?;
        if e > crate::polyring::monomial::DEGREE_CAP as u64 {
            return Err(Error::DegreeOverflow);
        }
        Ok(base.pow(e as u32))
    } else {
        Ok(base)
    }
}

fn parse_term(ring: &RingCtx, cur: &mut Cursor) -> Result<Poly> {
    let mut acc = parse_factor(ring, cur)?;
    while cur.eat(b'*') {
        let f = parse_factor(ring, cur)?;
        acc = acc.mul(&f);
    }
    Ok(acc)
}

fn parse_expr(ring: &RingCtx, cur: &mut Cursor) -> Result<Poly> {
    let mut acc = parse_term(ring, cur)?;
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(b'+') => {
                cur.bump();
                acc = acc.add(&parse_term(ring, cur)?);
            }
            Some(b'-') => {
                cur.bump();
                acc = acc.sub(&parse_term(ring, cur)?);
            }
            _ => return Ok(acc),
        }
    }
}

/// Parses a polynomial expression in the given ring.
pub fn parse_poly(ring: &RingCtx, text: &str) -> Result<Poly> {
    let mut cur = Cursor::new(text);
    let p = parse_expr(ring, &mut cur)?;
    cur.skip_ws();
    if cur.pos != cur.src.len() {
        return Err(cur.err("trailing input after expression"));
    }
    Ok(p)
}
