//! Short-interval characters: characters of the group of truncated tails
//! 1 + a_1 u + ... + a_nu u^nu (u = 1/t) under multiplication mod u^{nu+1}.
//!
//! A monic A = t^n + a_{n-1} t^{n-1} + ... has tail 1 + a_{n-1} u + a_{n-2} u^2 + ...

use std::fmt;
use std::sync::Arc;

use super::group::{decompose, Decomposition, NONE};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::phase::RootOfUnity;
use crate::poly::Poly;

#[derive(Debug)]
pub struct TailGroup {
    field: Arc<Field>,
    nu: usize,
    dec: Decomposition,
}

impl TailGroup {
    pub fn new(field: Arc<Field>, nu: usize) -> Result<Arc<TailGroup>> {
        let size = (field.q() as u64)
            .checked_pow(nu as u32)
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| Error::BudgetExceeded { needed: (field.q() as u128).pow(nu as u32), budget: 1 << 24 })?;
        let elems: Vec<u32> = (0..size as u32).collect();
        let dec = {
            let mul = |a: u32, b: u32| tail_mul(&field, nu, a, b);
            decompose(size as usize, 0, &elems, mul)?
        };
        Ok(Arc::new(TailGroup { field, nu, dec }))
    }

    pub fn nu(&self) -> usize {
        self.nu
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn orders(&self) -> &[u64] {
        &self.dec.orders
    }
    pub fn order(&self) -> u64 {
        self.dec.size()
    }
    pub fn exponent(&self) -> u64 {
        self.dec.exponent()
    }
    pub fn decomposition(&self) -> &Decomposition {
        &self.dec
    }

    /// Code of the tail of a monic polynomial: digits a_{n-1}, ..., a_{n-nu}.
    pub fn tail_code(&self, a: &Poly) -> u32 {
        let n = a.d();
        let q = self.field.q();
        let mut code = 0u32;
        for i in (1..=self.nu).rev() {
            let c = if i <= n { a.coeff(n - i) } else { 0 };
            code = code * q + c;
        }
        code
    }
}

/// Product of tails given by digit codes (digit i-1 holds the coefficient of u^i).
fn tail_mul(f: &Field, nu: usize, a: u32, b: u32) -> u32 {
    let q = f.q();
    let digits = |mut x: u32| -> Vec<u32> {
        let mut v = vec![1];
        for _ in 0..nu {
            v.push(x % q);
            x /= q;
        }
        v
    };
    let (da, db) = (digits(a), digits(b));
    let mut r = vec![0; nu + 1];
    for i in 0..=nu {
        for j in 0..=nu - i {
            r[i + j] = f.add(r[i + j], f.mul(da[i], db[j]));
        }
    }
    r[1..].iter().rev().fold(0, |acc, &c| acc * q + c)
}

#[derive(Clone)]
pub struct ShortIntervalChar {
    group: Arc<TailGroup>,
    exps: Vec<u64>,
    weights: Vec<u64>,
}

impl fmt::Debug for ShortIntervalChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

impl PartialEq for ShortIntervalChar {
    fn eq(&self, o: &Self) -> bool {
        self.group.nu == o.group.nu && self.exps == o.exps && *self.group.field == *o.group.field
    }
}

impl ShortIntervalChar {
    pub fn new(group: Arc<TailGroup>, exps: Vec<u64>) -> Result<ShortIntervalChar> {
        if exps.len() != group.orders().len() {
            return Err(Error::InvalidArgument("exponent tuple has the wrong length".into()));
        }
        let e = group.exponent();
        let exps: Vec<u64> = exps.iter().zip(group.orders()).map(|(&x, &d)| x % d).collect();
        let weights = exps.iter().zip(group.orders()).map(|(&x, &d)| x * (e / d)).collect();
        Ok(ShortIntervalChar { group, exps, weights })
    }

    pub fn trivial(field: Arc<Field>) -> ShortIntervalChar {
        let g = TailGroup::new(field, 0).expect("trivial tail group");
        ShortIntervalChar::new(g, Vec::new()).expect("empty tuple")
    }

    pub fn nu(&self) -> usize {
        self.group.nu
    }
    pub fn group(&self) -> &Arc<TailGroup> {
        &self.group
    }
    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }
    pub fn denominator(&self) -> u64 {
        self.group.exponent()
    }
    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn eval_tail(&self, code: u32) -> u64 {
        let d = self.group.dec.dlog[code as usize];
        debug_assert_ne!(d, NONE);
        let mut c = d as u64;
        let mut acc = 0;
        for (&w, &o) in self.weights.iter().zip(self.group.orders()) {
            acc += w * (c % o);
            c /= o;
        }
        acc % self.denominator()
    }

    /// xi(A) for monic A (numerator over [`Self::denominator`]).
    pub fn eval_num(&self, a: &Poly) -> u64 {
        self.eval_tail(self.group.tail_code(a))
    }

    pub fn eval(&self, a: &Poly) -> RootOfUnity {
        RootOfUnity::new(self.eval_num(a) as i64, self.denominator())
    }

    pub fn conj(&self) -> ShortIntervalChar {
        let exps = self.exps.iter().zip(self.group.orders()).map(|(&e, &d)| (d - e) % d).collect();
        ShortIntervalChar::new(self.group.clone(), exps).expect("arity matches")
    }

    pub fn mul(&self, o: &ShortIntervalChar) -> Result<ShortIntervalChar> {
        if self.nu() != o.nu() {
            return Err(Error::InvalidArgument("short characters of different lengths".into()));
        }
        let exps = self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect();
        ShortIntervalChar::new(self.group.clone(), exps)
    }

    /// Nontrivial on the deepest layer {1 + a u^nu}; length 0 counts as primitive.
    pub fn is_primitive_length(&self) -> bool {
        let nu = self.nu();
        if nu == 0 {
            return true;
        }
        let q = self.group.field.q();
        let shift = q.pow(nu as u32 - 1);
        (1..q).any(|a| self.eval_tail(a * shift) != 0)
    }

    /// Serialisation `(nu, (e_1,...,e_r))`.
    pub fn literal(&self) -> String {
        let e: Vec<String> = self.exps.iter().map(u64::to_string).collect();
        format!("({}, ({}))", self.nu(), e.join(","))
    }
}

/// All q^nu short-interval characters of length nu, index 0 trivial.
pub fn short_chars(field: &Arc<Field>, nu: usize) -> Result<Vec<ShortIntervalChar>> {
    let g = TailGroup::new(field.clone(), nu)?;
    (0..g.order()).map(|i| ShortIntervalChar::new(g.clone(), g.dec.exponents(i))).collect()
}

/// Parses `(nu, (e_1,...,e_r))`.
pub fn parse_short_char(field: &Arc<Field>, text: &str) -> Result<ShortIntervalChar> {
    let s = text.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::Parse { pos: 0, msg: "expected (nu, (exponents))".into() })?;
    let (nu, rest) = inner.split_once(',').ok_or_else(|| Error::Parse { pos: 0, msg: "missing exponent tuple".into() })?;
    let nu: usize = nu.trim().parse().map_err(|_| Error::Parse { pos: 1, msg: "bad length".into() })?;
    let exps = super::dirichlet::parse_tuple(rest)?;
    ShortIntervalChar::new(TailGroup::new(field.clone(), nu)?, exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    #[test]
    fn examples() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        let c0 = short_chars(&f2, 0).unwrap();
        assert_eq!(c0.len(), 1);
        assert!(c0[0].is_trivial());
        let c1 = short_chars(&f2, 1).unwrap();
        assert_eq!(c1.len(), 2);
        for g in crate::enumerate::monics_up_to(&f2, 5) {
            let n = g.d();
            let expect = if n >= 1 && g.coeff(n - 1) == 1 { RootOfUnity::MINUS_ONE } else { RootOfUnity::ONE };
            assert_eq!(c1[1].eval(&g), expect);
        }
    }

    #[test]
    fn literal_round_trip() {
        let f3 = FieldConfig::prime(3).build().unwrap();
        for c in short_chars(&f3, 2).unwrap() {
            assert_eq!(parse_short_char(&f3, &c.literal()).unwrap(), c);
        }
    }
}
