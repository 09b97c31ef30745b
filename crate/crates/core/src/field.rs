//! Finite fields F_q with q = p^k, realised by lookup tables.
//!
//! An element is a `u32` index `a_0 + a_1 p + ... + a_{k-1} p^{k-1}` encoding the
//! residue `a_0 + a_1 u + ...` modulo the defining polynomial in `u`. The prime
//! subfield is `0..p`.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::poly::Poly;

pub type Elem = u32;

/// Largest field size supported by the table representation.
pub const MAX_Q: u32 = 1 << 10;

/// Ordering of field elements used by the lexicographic index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum ElementOrder {
    /// Size of an element is its index.
    #[default]
    Natural,
    /// 0, g^0, g^1, ..., g^{q-2} for the least primitive element g.
    Generator,
    /// Elements listed by increasing size; must start with 0.
    Explicit(Vec<Elem>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    pub p: u32,
    pub k: u32,
    /// Coefficients over F_p, ascending, monic of degree k.
    pub ext_modulus: Option<Vec<u32>>,
    pub element_order: ElementOrder,
    /// Directory for persisted irreducible tables.
    pub cache_dir: Option<PathBuf>,
}

impl FieldConfig {
    pub fn prime(p: u32) -> Self {
        FieldConfig { p, k: 1, ext_modulus: None, element_order: ElementOrder::Natural, cache_dir: None }
    }

    pub fn extension(p: u32, k: u32) -> Self {
        FieldConfig { p, k, ..Self::prime(p) }
    }

    /// Configuration for F_q, splitting q into p^k.
    pub fn for_q(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Ok(Self::extension(p, k))
    }

    pub fn with_order(mut self, order: ElementOrder) -> Self {
        self.element_order = order;
        self
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn build(self) -> Result<Arc<Field>> {
        Field::new(self).map(Arc::new)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q = p^k, or `None` if q is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    ext_modulus: Option<Vec<u32>>,
    order_kind: ElementOrder,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    size_of: Vec<u32>,
    elem_of_size: Vec<Elem>,
    trace: Vec<u32>,
    generator: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    cache_dir: Option<PathBuf>,
    pub(crate) irr_memo: Mutex<HashMap<usize, Arc<Vec<Poly>>>>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("ext_modulus", &self.ext_modulus)
            .field("element_order", &self.order_kind)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.ext_modulus == other.ext_modulus
    }
}

impl Field {
    pub fn new(cfg: FieldConfig) -> Result<Field> {
        let FieldConfig { p, k, ext_modulus, element_order, cache_dir } = cfg;
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        p.checked_pow(k).filter(|&q| q <= MAX_Q).ok_or_else(|| {
            Error::InvalidField(format!("q = {p}^{k} exceeds the supported maximum {MAX_Q}"))
        })?;
        let cache_dir = cache_dir.or_else(|| std::env::var_os("FFDISC_CACHE").map(PathBuf::from));

        let modulus = if k == 1 {
            if ext_modulus.is_some() {
                return Err(Error::InvalidField("prime fields take no extension modulus".into()));
            }
            None
        } else {
            let base = Field::raw(p, 1, None)?;
            let m = match ext_modulus {
                Some(m) => {
                    let poly = Poly::from_coeffs(m.iter().map(|&c| c % p).collect());
                    if poly.deg() != Some(k as usize) || !poly.is_monic() {
                        return Err(Error::InvalidField(format!("extension modulus must be monic of degree {k}")));
                    }
                    if !crate::factor::is_irreducible(&base, &poly)? {
                        return Err(Error::InvalidField("extension modulus is reducible".into()));
                    }
                    poly.coeffs().to_vec()
                }
                None => crate::enumerate::monics_of_degree(&base, k as usize)
                    .find(|g| crate::factor::is_irreducible(&base, g).unwrap_or(false))
                    .expect("an irreducible of every degree exists")
                    .coeffs()
                    .to_vec(),
            };
            Some(m)
        };
        let mut field = Field::raw(p, k, modulus)?;
        field.cache_dir = cache_dir;
        field.set_order(element_order)?;
        Ok(field)
    }

    fn raw(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        let q = p.pow(k);
        let n = q as usize;
        let digits = |mut x: u32| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let undigits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        let dig: Vec<Vec<u32>> = (0..q).map(digits).collect();
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = dig[a].iter().zip(&dig[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = undigits(&s);
                let prod = match &modulus {
                    None => ((a as u64 * b as u64) % p as u64) as u32,
                    Some(m) => {
                        let mut r = vec![0u32; 2 * k as usize];
                        for (i, x) in dig[a].iter().enumerate() {
                            for (j, y) in dig[b].iter().enumerate() {
                                r[i + j] = (r[i + j] + x * y) % p;
                            }
                        }
                        for d in (k as usize..r.len()).rev() {
                            let c = r[d];
                            if c != 0 {
                                for (i, mi) in m.iter().enumerate() {
                                    let idx = d - k as usize + i;
                                    r[idx] = (r[idx] + p - (c * mi) % p) % p;
                                }
                            }
                        }
                        undigits(&r[..k as usize])
                    }
                };
                mul[a * n + b] = prod;
            }
        }
        let neg: Vec<Elem> = (0..n).map(|a| (0..q).find(|&b| add[a * n + b as usize] == 0).unwrap()).collect();
        let mut inv = vec![0; n];
        for a in 1..n {
            inv[a] = (1..q).find(|&b| mul[a * n + b as usize] == 1).ok_or_else(|| {
                Error::InvalidField("multiplication table has a zero divisor".into())
            })?;
        }
        let order_of = |a: u32| -> u32 {
            let (mut x, mut o) = (a, 1);
            while x != 1 {
                x = mul[x as usize * n + a as usize];
                o += 1;
            }
            o
        };
        let generator = (1..q).find(|&a| order_of(a) == q - 1).expect("F_q^x is cyclic");
        let mut exp = Vec::with_capacity(n - 1);
        let mut log = vec![u32::MAX; n];
        let mut x = 1;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = mul[x as usize * n + generator as usize];
        }
        // trace: sum of Frobenius conjugates, lands in the prime subfield 0..p
        let trace = (0..q)
            .map(|a| {
                let (mut s, mut c) = (0u32, a);
                for _ in 0..k {
                    s = add[s as usize * n + c as usize];
                    let mut cp = 1;
                    for _ in 0..p {
                        cp = mul[cp as usize * n + c as usize];
                    }
                    c = cp;
                }
                s
            })
            .collect();
        Ok(Field {
            p,
            k,
            q,
            ext_modulus: modulus,
            order_kind: ElementOrder::Natural,
            add,
            mul,
            neg,
            inv,
            size_of: (0..q).collect(),
            elem_of_size: (0..q).collect(),
            trace,
            generator,
            exp,
            log,
            cache_dir: None,
            irr_memo: Mutex::new(HashMap::new()),
        })
    }

    fn set_order(&mut self, order: ElementOrder) -> Result<()> {
        let list: Vec<Elem> = match &order {
            ElementOrder::Natural => (0..self.q).collect(),
            ElementOrder::Generator => std::iter::once(0).chain(self.exp.iter().copied()).collect(),
            ElementOrder::Explicit(v) => v.clone(),
        };
        let mut seen = vec![false; self.q as usize];
        if list.len() != self.q as usize || list.first() != Some(&0) {
            return Err(Error::InvalidField("element order must list all q elements starting with 0".into()));
        }
        for &e in &list {
            if e >= self.q || std::mem::replace(&mut seen[e as usize], true) {
                return Err(Error::InvalidField("element order is not a permutation".into()));
            }
        }
        for (s, &e) in list.iter().enumerate() {
            self.size_of[e as usize] = s as u32;
        }
        self.elem_of_size = list;
        self.order_kind = order;
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn ext_modulus(&self) -> Option<&[u32]> {
        self.ext_modulus.as_deref()
    }
    pub fn element_order(&self) -> &ElementOrder {
        &self.order_kind
    }
    pub fn cache_dir(&self) -> Option<&std::path::Path> {
        self.cache_dir.as_deref()
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        a < self.q
    }
    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[(a * self.q + b) as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[(a * self.q + b) as usize]
    }
    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }
    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi)).ok_or(Error::DivisionByZero)
    }
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
    /// Image of an integer under Z -> F_p.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }
    /// Absolute trace to F_p, returned as an integer in 0..p.
    #[inline]
    pub fn trace(&self, a: Elem) -> u32 {
        self.trace[a as usize]
    }
    /// The least (by index) generator of F_q^x.
    pub fn generator(&self) -> Elem {
        self.generator
    }
    /// Discrete logarithm to base `generator()`; `None` for zero.
    pub fn dlog(&self, a: Elem) -> Option<u32> {
        let l = self.log[a as usize];
        (l != u32::MAX).then_some(l)
    }
    pub fn gen_pow(&self, i: u64) -> Elem {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }
    /// Size of `a` in the configured element order.
    #[inline]
    pub fn size_of(&self, a: Elem) -> u32 {
        self.size_of[a as usize]
    }
    #[inline]
    pub fn elem_of_size(&self, s: u32) -> Elem {
        self.elem_of_size[s as usize]
    }
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.q
    }

    pub fn check_elem(&self, a: Elem) -> Result<Elem> {
        if a < self.q {
            Ok(a)
        } else {
            Err(Error::FieldMismatch { coeff: a, q: self.q })
        }
    }

    /// Coefficient digits of `a` over F_p in the basis 1, u, ..., u^{k-1}.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut x = a;
        (0..self.k)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u32]) -> Elem {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    /// Literal for one element: an integer for the prime subfield, `[poly-in-u]` otherwise.
    pub fn fmt_elem(&self, a: Elem) -> String {
        if a < self.p {
            return a.to_string();
        }
        let d = self.digits(a);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}u"),
                _ => format!("{coef}u^{i}"),
            });
        }
        format!("[{}]", terms.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn f4_defaults_to_least_irreducible() {
        let f = FieldConfig::for_q(4).unwrap().build().unwrap();
        assert_eq!(f.ext_modulus(), Some(&[1, 1, 1][..]));
        // u * u = u + 1
        assert_eq!(f.mul(2, 2), 3);
        for a in 1..4 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 8, 9] {
            let f = FieldConfig::for_q(q).unwrap().build().unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
            for a in f.elements() {
                assert!(f.trace(a) < f.p());
            }
        }
    }

    #[test]
    fn generator_order() {
        let f = FieldConfig::for_q(9).unwrap().with_order(ElementOrder::Generator).build().unwrap();
        assert_eq!(f.elem_of_size(0), 0);
        assert_eq!(f.elem_of_size(1), 1);
        assert_eq!(f.elem_of_size(2), f.generator());
        for s in 0..9 {
            assert_eq!(f.size_of(f.elem_of_size(s)), s);
        }
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(FieldConfig::prime(4).build().is_err());
        let bad = FieldConfig { ext_modulus: Some(vec![1, 0, 1]), ..FieldConfig::extension(2, 2) };
        assert!(bad.build().is_err());
        let order = FieldConfig::prime(3).with_order(ElementOrder::Explicit(vec![1, 0, 2]));
        assert!(order.build().is_err());
    }
}
