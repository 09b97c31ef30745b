//! Polynomial literals.
//!
//! Accepted forms:
//! * symbolic: sums and differences of products of powers, e.g. `t^2+t+1`, `2t+4`,
//!   `t^2*(t+1)^2`; integers reduce mod p, and `[poly-in-u]` denotes an element of an
//!   extension field written in the generator `u` of its defining modulus;
//! * coefficient lists: ascending comma-separated element indices, e.g. `1,1,1`.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

const MAX_EXPONENT: u64 = 1 << 16;

pub fn parse_poly(f: &Field, text: &str) -> Result<Poly> {
    let trimmed = text.trim();
    if trimmed.contains(',') && !trimmed.contains(['t', '[']) {
        return parse_coeff_list(f, trimmed);
    }
    let mut p = Parser { f, src: text.as_bytes(), pos: 0, var: b't' };
    let out = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

fn parse_coeff_list(f: &Field, text: &str) -> Result<Poly> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let v: u32 = part.trim().parse().map_err(|_| Error::Parse { pos: offset, msg: format!("bad coefficient {part:?}") })?;
        coeffs.push(f.check_elem(v).map_err(|_| Error::Parse { pos: offset, msg: format!("coefficient {v} out of range") })?);
        offset += part.len() + 1;
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Ascending comma-separated coefficient indices (constants padded with a zero).
pub fn coeff_list(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts: Vec<String> = p.coeffs().iter().map(u32::to_string).collect();
    if parts.len() == 1 {
        // keep a comma so the list form is not read as an integer mod p
        parts.push("0".into());
    }
    parts.join(",")
}

struct Parser<'a> {
    f: &'a Field,
    src: &'a [u8],
    pos: usize,
    var: u8,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Poly> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        }
        let first = self.product()?;
        let mut acc = if neg { self.f.poly_neg(&first) } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.product()?;
                    acc = self.f.poly_add(&acc, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.product()?;
                    acc = self.f.poly_sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.power()?;
                    acc = self.f.poly_mul(&acc, &t);
                }
                Some(c) if c == self.var || c == b'(' || c == b'[' || c.is_ascii_digit() => {
                    let t = self.power()?;
                    acc = self.f.poly_mul(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.uint()?;
            if e > MAX_EXPONENT {
                return Err(Error::Parse { pos: start, msg: format!("exponent {e} exceeds {MAX_EXPONENT}") });
            }
            return Ok(self.f.poly_pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(c) if c == self.var => {
                self.pos += 1;
                Ok(Poly::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'[') if self.var == b't' => {
                self.pos += 1;
                let c = self.ext_elem()?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                Ok(Poly::constant(c))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint_mod_p()?;
                Ok(Poly::constant(n))
            }
            Some(_) => Err(self.err("expected a term")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn ext_elem(&mut self) -> Result<Elem> {
        let start = self.pos;
        let mut inner = Parser { f: self.f, src: self.src, pos: self.pos, var: b'u' };
        let upoly = inner.sum()?;
        self.pos = inner.pos;
        if self.f.k() == 1 {
            if upoly.deg().unwrap_or(0) > 0 {
                return Err(Error::Parse { pos: start, msg: "u is not defined over a prime field".into() });
            }
            return Ok(upoly.coeff(0));
        }
        Ok(self.f.poly_eval(&upoly, self.f.p()))
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "integer overflow".into() })
    }

    fn uint_mod_p(&mut self) -> Result<Elem> {
        self.skip_ws();
        let p = self.f.p() as u64;
        let start = self.pos;
        let mut acc = 0u64;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            acc = (acc * 10 + (self.src[self.pos] - b'0') as u64) % p;
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(acc as Elem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    #[test]
    fn grammar_examples() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        let f3 = FieldConfig::prime(3).build().unwrap();
        assert_eq!(parse_poly(&f2, "t^2+t+1").unwrap().coeffs(), &[1, 1, 1]);
        assert_eq!(parse_poly(&f3, "2t+4").unwrap().coeffs(), &[1, 2]);
        assert!(parse_poly(&f2, "t^2 + t^2").unwrap().is_zero());
        assert_eq!(parse_poly(&f2, "t^2*(t+1)^2").unwrap().coeffs(), &[0, 0, 1, 0, 1]);
        assert_eq!(parse_poly(&f3, "1,0,2").unwrap().coeffs(), &[1, 0, 2]);
        assert_eq!(parse_poly(&f3, "t - 1").unwrap().coeffs(), &[2, 1]);
    }

    #[test]
    fn extension_coefficients() {
        let f4 = FieldConfig::for_q(4).unwrap().build().unwrap();
        assert_eq!(parse_poly(&f4, "[u]t+[u+1]").unwrap().coeffs(), &[3, 2]);
        // u^2 = u + 1 in F_4
        assert_eq!(parse_poly(&f4, "[u^2]").unwrap().coeffs(), &[3]);
    }

    #[test]
    fn errors_carry_positions() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        assert!(matches!(parse_poly(&f2, "t^"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly(&f2, "t^99999999"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&f2, "t+x"), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_poly(&f2, "(t+1").is_err());
        assert!(parse_poly(&f2, "2,1").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let f9 = FieldConfig::for_q(9).unwrap().build().unwrap();
        for n in 0..3000u64 {
            let p = crate::lex::lex_unrank(&f9, n * 7 + 1);
            assert_eq!(parse_poly(&f9, &f9.fmt_poly(&p)).unwrap(), p);
            assert_eq!(parse_poly(&f9, &coeff_list(&p)).unwrap(), p);
        }
    }
}
