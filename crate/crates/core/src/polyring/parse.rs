use super::monomial::Monomial;
use super::poly::{Poly, Ring};
use crate::error::{Error, Result};

/// Parse `coeff*x0^a*x1^b ± ...` into a polynomial of `ring`.
///
/// Whitespace is ignored. Integer coefficients are reduced mod p. Errors
/// report `line` and a 1-based column counted from `column_offset + 1`.
pub fn parse_poly_at(ring: &Ring, src: &str, line: usize, column_offset: usize) -> Result<Poly> {
    let mut p = Parser {
        ring,
        chars: src.char_indices().collect(),
        pos: 0,
        line,
        column_offset,
    };
    p.poly()
}

pub fn parse_poly(ring: &Ring, src: &str) -> Result<Poly> {
    parse_poly_at(ring, src, 1, 0)
}

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    column_offset: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column_offset + self.pos.min(self.chars.len()) + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return Err(self.err("expected a polynomial")),
                None => break,
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                Some(c) if first => {
                    let _ = c;
                    1
                }
                Some(c) => return Err(self.err(format!("expected '+' or '-', found {c:?}"))),
            };
            first = false;
            let (m, c) = self.term()?;
            let c = if sign < 0 { self.ring.field().neg(c) } else { c };
            terms.push((m, c));
        }
        Ok(Poly::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<(Monomial, u32)> {
        let f = self.ring.field();
        let mut coeff = 1u32;
        let mut mono = Monomial::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff = f.mul(coeff, self.integer()?),
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let start = self.pos;
                    let name = self.ident();
                    let Some(var) = self.ring.var_index(&name) else {
                        self.pos = start;
                        return Err(self.err(format!("unknown variable {name:?}")));
                    };
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        match self.peek() {
                            Some(c) if c.is_ascii_digit() => e = self.exponent()?,
                            _ => return Err(self.err("expected an exponent after '^'")),
                        }
                    }
                    let mut ex = vec![0u32; self.ring.nvars()];
                    ex[var] = e;
                    let factor = Monomial::from_exponents(&ex);
                    if (0..self.ring.nvars()).any(|i| mono.exp(i) + factor.exp(i) > u16::MAX as u32)
                    {
                        return Err(self.err("exponent too large"));
                    }
                    mono = mono.mul(&factor);
                }
                Some(c) => return Err(self.err(format!("unexpected character {c:?}"))),
                None => return Err(self.err("unexpected end of input")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((mono, coeff))
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    /// Integer literal reduced mod p.
    fn integer(&mut self) -> Result<u32> {
        let p = self.ring.p() as u64;
        let mut acc = 0u64;
        for d in self.digits().bytes() {
            acc = (acc * 10 + (d - b'0') as u64) % p;
        }
        Ok(acc as u32)
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.pos;
        let s = self.digits();
        match s.parse::<u32>() {
            Ok(e) if e <= u16::MAX as u32 => Ok(e),
            _ => {
                self.pos = start;
                Err(self.err("exponent too large"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        let r = Ring::standard(5, 3).unwrap();
        let f = parse_poly(&r, " 7*x0^2 - x1*x2 + 10*x2^2 ").unwrap();
        assert_eq!(r.fmt_poly(&f), "2*x0^2 - x1*x2");
        let g = parse_poly(&r, "-x0+x0").unwrap();
        assert!(g.is_zero());
        assert_eq!(parse_poly(&r, "0").unwrap(), Poly::zero());
        assert_eq!(parse_poly(&r, "x0 * x0").unwrap(), parse_poly(&r, "x0^2").unwrap());
    }

    #[test]
    fn reports_columns() {
        let r = Ring::standard(5, 2).unwrap();
        match parse_poly(&r, "x0 + y1") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("{other:?}"),
        }
        match parse_poly_at(&r, "x0 x1", 3, 10) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 14)),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly(&r, "").is_err());
        assert!(parse_poly(&r, "x0^").is_err());
        assert!(parse_poly(&r, "x0 +").is_err());
    }

    #[test]
    fn roundtrips_display() {
        let r = Ring::standard(7, 3).unwrap();
        let f = parse_poly(&r, "3*x0^3 - 2*x0*x1*x2 + x2^3 + 6*x1^3").unwrap();
        assert_eq!(parse_poly(&r, &r.fmt_poly(&f)).unwrap(), f);
    }
}
