//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := ['-'] atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'x' | 'a' integer | '(' expr ')'
//! ```
//!
//! Juxtaposition (`3x`) is rejected; write `3*x`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Q;
use crate::error::{Error, Result};

/// A polynomial over the raw variables `x, a0, a1, ..., a{n-1}`, before the
/// ring relation is applied. Exponent vectors have length `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawPoly {
    pub(crate) n: usize,
    pub(crate) terms: BTreeMap<Vec<u32>, Q>,
}

impl RawPoly {
    pub fn zero(n: usize) -> Self {
        RawPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        let mut p = RawPoly::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n + 1], c);
        }
        p
    }

    /// Variable by raw index: 0 is `x`, `i + 1` is `a_i`.
    pub fn var(n: usize, idx: usize) -> Self {
        let mut e = vec![0; n + 1];
        e[idx] = 1;
        let mut p = RawPoly::zero(n);
        p.terms.insert(e, Q::one());
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        super::add_into(&mut self.terms, e, c);
    }

    pub fn add(&self, other: &RawPoly) -> RawPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> RawPoly {
        RawPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &RawPoly) -> RawPoly {
        let mut out = RawPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> RawPoly {
        let mut out = RawPoly::constant(self.n, Q::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    A(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str, n: usize) -> Result<Vec<(usize, Tok)>> {
    let err = |pos: usize, msg: &str| Error::Parse {
        input: input.to_string(),
        pos,
        msg: msg.to_string(),
    };
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = input[start..i].parse().map_err(|_| err(start, "bad integer"))?;
                out.push((start, Tok::Num(v)));
            }
            'x' => {
                out.push((i, Tok::X));
                i += 1;
            }
            'a' => {
                let start = i;
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(err(start, "expected index after 'a'"));
                }
                let idx: usize = input[ds..i].parse().map_err(|_| err(ds, "bad index"))?;
                if idx >= n {
                    return Err(Error::VariableOutOfRange { var: format!("a{idx}"), n });
                }
                out.push((start, Tok::A(idx)));
            }
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            _ => return Err(err(i, &format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.input.len())
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            input: self.input.to_string(),
            pos: self.offset(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<RawPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RawPoly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RawPoly> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k: u32 = match u32::try_from(k) {
                        Ok(k) if k <= 4096 => k,
                        _ => return self.fail("exponent too large"),
                    };
                    return Ok(base.pow(k));
                }
                _ => return self.fail("expected integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RawPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(p)) => {
                self.pos += 1;
                let mut value = Q::from_integer(p);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(q)) if !q.is_zero() => {
                            self.pos += 1;
                            value /= Q::from_integer(q);
                        }
                        _ => return self.fail("expected nonzero denominator"),
                    }
                }
                if matches!(self.peek(), Some(Tok::X | Tok::A(_) | Tok::LParen)) {
                    return self.fail("juxtaposition is not allowed, use '*'");
                }
                Ok(RawPoly::constant(self.n, value))
            }
            Some(Tok::X) => {
                self.pos += 1;
                Ok(RawPoly::var(self.n, 0))
            }
            Some(Tok::A(i)) => {
                self.pos += 1;
                Ok(RawPoly::var(self.n, i + 1))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.fail("expected ')'"),
                }
            }
            _ => self.fail("expected a number, variable or '('"),
        }
    }
}

/// Parses `input` into a raw polynomial in `x, a0, ..., a{n-1}`.
///
/// With `n = 0` only `x` is accepted, which is how monic potentials are read.
pub fn parse_raw(input: &str, n: usize) -> Result<RawPoly> {
    let toks = tokenize(input, n)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            input: input.to_string(),
            pos: 0,
            msg: "empty polynomial".into(),
        });
    }
    let mut p = Parser { input, toks, pos: 0, n };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fixture_entries() {
        let p = parse_raw("a2^2 - 3*a1", 3).unwrap();
        assert_eq!(p.terms.len(), 2);
        let p = parse_raw("(3*x + a2)^3", 3).unwrap();
        assert_eq!(p.terms.len(), 4);
        let p = parse_raw("1/2*x - -1", 2).unwrap();
        assert_eq!(p.terms.len(), 2);
    }

    #[test]
    fn rejects_juxtaposition_and_bad_vars() {
        assert!(matches!(parse_raw("3x", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_raw("a3", 3), Err(Error::VariableOutOfRange { .. })));
        assert!(matches!(parse_raw("x +", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_raw("", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_raw("1/0", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_raw("a0", 0), Err(Error::VariableOutOfRange { .. })));
    }
}
