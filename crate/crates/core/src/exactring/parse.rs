//! Text syntax for ring elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | primary)*     -- juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := primary ('^' integer)?
//! primary:= integer | variable | '(' expr ')' | '[' c0,c1,... ']'
//! ```
//!
//! Integers are mapped into the ring, `/` is exact division (the divisor must
//! be a unit), variables name a generator of a rational function field
//! (nested fields resolve through the tower) and `[c0,c1,...]` is an
//! extension-field element given by ascending coefficients.

use num_bigint::BigInt;

use super::elem::RingElem;
use super::ring::Ring;
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: &'a Ring,
    src: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        let s: String = self.src.iter().collect();
        Error::Parse(format!("{msg} at position {} in `{s}`", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RingElem> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingElem> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = acc.checked_mul(&self.unary()?)?;
                }
                '/' => {
                    self.pos += 1;
                    acc = acc.checked_div(&self.unary()?)?;
                }
                c if c == '(' || c.is_ascii_alphabetic() => {
                    acc = acc.checked_mul(&self.power()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RingElem> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RingElem> {
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u64 = self.src[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RingElem> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('[') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos] != ']' {
                    self.pos += 1;
                }
                if self.pos == self.src.len() {
                    return Err(self.err("expected `]`"));
                }
                let body: String = self.src[start..self.pos].iter().collect();
                self.pos += 1;
                if !self.ring.is_finite_field() {
                    return Err(self.err("coefficient lists denote extension-field elements"));
                }
                let p = BigInt::from(self.ring.characteristic());
                let coeffs = body
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<BigInt>()
                            .map(|v| super::ring::reduce_bigint(&(v % &p), self.ring.characteristic()))
                            .map_err(|_| self.err("bad coefficient"))
                    })
                    .collect::<Result<Vec<u64>>>()?;
                if self.ring.finite_degree() == Some(1) {
                    if coeffs.iter().skip(1).any(|&c| c != 0) {
                        return Err(self.err("prime field elements have one coefficient"));
                    }
                    return Ok(self.ring.from_i64(coeffs.first().copied().unwrap_or(0) as i64));
                }
                if coeffs.len() > self.ring.finite_degree().unwrap() {
                    return Err(self.err("too many coefficients"));
                }
                Ok(RingElem::ext_from_coeffs(self.ring, &coeffs))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.src[start..self.pos].iter().collect();
                let v: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(self.ring.from_bigint(&v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name: String = self.src[start..self.pos].iter().collect();
                self.ring
                    .variable(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}` in {}", self.ring)))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parses an element of `ring`.
pub fn parse_elem(ring: &Ring, s: &str) -> Result<RingElem> {
    let mut p = Parser { ring, src: s.chars().collect(), pos: 0 };
    let v = p.expr().map_err(|e| match e {
        Error::NotUnit { .. } | Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    })?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Splits a comma-separated list, ignoring commas nested in brackets or
/// parentheses.
pub fn split_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    out.push(cur.trim().to_string());
    out
}

/// Parses a comma-separated list of elements.
pub fn parse_elem_list(ring: &Ring, s: &str) -> Result<Vec<RingElem>> {
    split_list(s).iter().map(|t| parse_elem(ring, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_and_residues() {
        let q = Ring::rationals();
        assert_eq!(parse_elem(&q, "-3/2").unwrap().to_string(), "-3/2");
        assert_eq!(parse_elem(&q, "(1+2)*3 - 2^3").unwrap().to_string(), "1");
        let f5 = Ring::parse("fp:5").unwrap();
        assert_eq!(parse_elem(&f5, "-1").unwrap().to_string(), "4");
        assert_eq!(parse_elem(&f5, "1/2").unwrap().to_string(), "3");
        assert!(parse_elem(&f5, "1/5").is_err());
        assert!(parse_elem(&f5, "1 +").is_err());
    }

    #[test]
    fn function_field_expressions() {
        let r = Ring::parse("ratfunc:fp:7:s").unwrap();
        assert_eq!(parse_elem(&r, "s+1").unwrap().to_string(), "s + 1");
        assert_eq!(parse_elem(&r, "2s^2").unwrap().to_string(), "2*s^2");
        let x = parse_elem(&r, "(s+1)/(2s-2)").unwrap();
        assert_eq!(x.to_string(), "(4*s + 4)/(s + 6)");
        assert!(parse_elem(&r, "t").is_err());
        let rt = Ring::parse("ratfunc:ratfunc:fp:7:s:t").unwrap();
        assert!(parse_elem(&rt, "s*t + 1").is_ok());
    }

    #[test]
    fn extension_literals() {
        let f = Ring::parse("fpk:5:2").unwrap();
        let a = parse_elem(&f, "[1,2]").unwrap();
        assert_eq!(a.to_string(), "[1,2]");
        assert_eq!(parse_elem(&f, "[3]").unwrap(), f.from_i64(3));
        assert_eq!(split_list("0,[1,2],3"), vec!["0", "[1,2]", "3"]);
    }
}
