//! Polynomials over F_q as ascending coefficient vectors.
//!
//! A [`Poly`] holds coefficients only; arithmetic goes through the [`Field`] that the
//! coefficients belong to.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Degree with the convention deg(0) = -infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    /// `deg < n` for an integer bound `n` (only the zero polynomial has degree < 0).
    pub fn lt(self, n: i64) -> bool {
        match self {
            Degree::NegInf => true,
            Degree::Finite(d) => (d as i64) < n,
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInf, Degree::NegInf) => Ordering::Equal,
            (Degree::NegInf, _) => Ordering::Less,
            (_, Degree::NegInf) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

/// Canonical comparison: by degree, then by leading coefficients downward (raw indices).
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }
    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }
    pub fn constant(c: Elem) -> Poly {
        Poly::from_coeffs(vec![c])
    }
    /// The variable t.
    pub fn t() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }
    /// c * t^n.
    pub fn monomial(c: Elem, n: usize) -> Poly {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Poly::from_coeffs(v)
    }
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }
    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }
    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }
    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }
    /// Degree, or `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    /// Degree of a polynomial known to be nonzero.
    pub fn d(&self) -> usize {
        self.deg().expect("degree of the zero polynomial")
    }
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }
    /// Multiplies by t^n.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; n];
        v.extend_from_slice(&self.coeffs);
        Poly { coeffs: v }
    }
}

impl Field {
    pub fn check_poly(&self, a: &Poly) -> Result<()> {
        for &c in a.coeffs() {
            self.check_elem(c)?;
        }
        Ok(())
    }

    pub fn poly_add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_neg(&self, a: &Poly) -> Poly {
        Poly { coeffs: a.coeffs.iter().map(|&c| self.neg(c)).collect() }
    }

    pub fn poly_scale(&self, a: &Poly, c: Elem) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { coeffs: a.coeffs.iter().map(|&x| self.mul(x, c)).collect() }
    }

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut r = vec![0; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                r[i + j] = self.add(r[i + j], self.mul(x, y));
            }
        }
        Poly::from_coeffs(r)
    }

    pub fn poly_pow(&self, a: &Poly, mut e: u64) -> Poly {
        let (mut base, mut acc) = (a.clone(), Poly::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.poly_mul(&base, &base);
            }
        }
        acc
    }

    /// Quotient and remainder with deg r < deg b.
    pub fn poly_divrem(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.deg().ok_or(Error::DivisionByZero)?;
        let Some(da) = a.deg() else { return Ok((Poly::zero(), Poly::zero())) };
        if da < db {
            return Ok((Poly::zero(), a.clone()));
        }
        let lead_inv = self.inv(b.lead()).expect("nonzero leading coefficient");
        let mut r = a.coeffs.clone();
        let mut quo = vec![0; da - db + 1];
        for i in (0..=da - db).rev() {
            let c = r[i + db];
            if c == 0 {
                continue;
            }
            let f = self.mul(c, lead_inv);
            quo[i] = f;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[i + j] = self.sub(r[i + j], self.mul(f, bj));
            }
        }
        r.truncate(db);
        Ok((Poly::from_coeffs(quo), Poly::from_coeffs(r)))
    }

    pub fn poly_rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let db = b.deg().ok_or(Error::DivisionByZero)?;
        if a.coeffs.len() <= db {
            return Ok(a.clone());
        }
        let lead_inv = self.inv(b.lead()).expect("nonzero leading coefficient");
        let mut r = a.coeffs.clone();
        for i in (0..r.len() - db).rev() {
            let c = r[i + db];
            if c == 0 {
                continue;
            }
            let f = self.mul(c, lead_inv);
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[i + j] = self.sub(r[i + j], self.mul(f, bj));
            }
        }
        r.truncate(db);
        Ok(Poly::from_coeffs(r))
    }

    /// Exact quotient `a / b`, or `None` if `b` does not divide `a`.
    pub fn poly_div_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        match self.poly_divrem(a, b) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, b: &Poly, a: &Poly) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        self.poly_rem(a, b).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn poly_monic(&self, a: &Poly) -> Poly {
        if a.is_zero() || a.is_monic() {
            return a.clone();
        }
        self.poly_scale(a, self.inv(a.lead()).unwrap())
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.poly_rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    /// Monic least common multiple; lcm with zero is zero.
    pub fn poly_lcm(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let g = self.poly_gcd(a, b);
        let (q, _) = self.poly_divrem(&self.poly_mul(a, b), &g).expect("gcd is nonzero");
        self.poly_monic(&q)
    }

    /// Extended gcd: (g, s, u) with s a + u b = g, g monic.
    pub fn poly_xgcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut u0, mut u1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = self.poly_divrem(&r0, &r1).expect("nonzero divisor");
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let u = self.poly_sub(&u0, &self.poly_mul(&q, &u1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            u0 = std::mem::replace(&mut u1, u);
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let c = self.inv(r0.lead()).unwrap();
        (self.poly_scale(&r0, c), self.poly_scale(&s0, c), self.poly_scale(&u0, c))
    }

    /// Inverse of `a` modulo `m`, if coprime.
    pub fn poly_inv_mod(&self, a: &Poly, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.poly_xgcd(a, m);
        g.is_one().then(|| self.poly_rem(&s, m).expect("nonzero modulus"))
    }

    pub fn poly_mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.poly_rem(&self.poly_mul(a, b), m).expect("nonzero modulus")
    }

    pub fn poly_powmod(&self, a: &Poly, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.poly_rem(a, m).expect("nonzero modulus");
        let mut acc = self.poly_rem(&Poly::one(), m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mulmod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.poly_mulmod(&base, &base, m);
            }
        }
        acc
    }

    pub fn poly_derivative(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(
            a.coeffs.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, self.from_int(i as i64))).collect(),
        )
    }

    pub fn poly_eval(&self, a: &Poly, x: Elem) -> Elem {
        a.coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Symbolic literal such as `t^2+t+1` or `[u]t+1`.
    pub fn fmt_poly(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in a.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { self.fmt_elem(c) };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            });
        }
        terms.join("+")
    }
}

/// Operations named after their mathematical meaning, for callers that dispatch by tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
    Gcd,
    Lcm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyResult {
    One(Poly),
    Two(Poly, Poly),
}

pub fn poly_arith(f: &Field, a: &Poly, b: &Poly, op: PolyOp) -> Result<PolyResult> {
    f.check_poly(a)?;
    f.check_poly(b)?;
    Ok(match op {
        PolyOp::Add => PolyResult::One(f.poly_add(a, b)),
        PolyOp::Sub => PolyResult::One(f.poly_sub(a, b)),
        PolyOp::Mul => PolyResult::One(f.poly_mul(a, b)),
        PolyOp::DivRem => {
            let (q, r) = f.poly_divrem(a, b)?;
            PolyResult::Two(q, r)
        }
        PolyOp::Gcd => PolyResult::One(f.poly_gcd(a, b)),
        PolyOp::Lcm => PolyResult::One(f.poly_lcm(a, b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    fn f2() -> std::sync::Arc<Field> {
        FieldConfig::prime(2).build().unwrap()
    }

    fn p(c: &[u32]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(Poly::zero().degree(), Degree::NegInf);
        assert!(Poly::zero().degree() < Poly::one().degree());
        assert!(Poly::zero().degree().lt(0));
        assert!(!Poly::one().degree().lt(0));
    }

    #[test]
    fn small_examples_over_f2() {
        let f = f2();
        // gcd(t^2+t, t) = t
        assert_eq!(f.poly_gcd(&p(&[0, 1, 1]), &p(&[0, 1])), p(&[0, 1]));
        // t^3+1 = (t+1)(t^2+t+1)
        assert_eq!(f.poly_divrem(&p(&[1, 0, 0, 1]), &p(&[1, 1])).unwrap(), (p(&[1, 1, 1]), Poly::zero()));
        assert_eq!(f.poly_lcm(&p(&[0, 1]), &p(&[1, 1])), p(&[0, 1, 1]));
        assert_eq!(f.poly_divrem(&p(&[1]), &Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn arith_dispatch_checks_range() {
        let f = f2();
        assert!(poly_arith(&f, &p(&[2]), &p(&[1]), PolyOp::Add).is_err());
        assert_eq!(poly_arith(&f, &p(&[1, 1]), &p(&[1, 1]), PolyOp::Add).unwrap(), PolyResult::One(Poly::zero()));
    }

    #[test]
    fn formatting() {
        let f = f2();
        assert_eq!(f.fmt_poly(&p(&[1, 1, 1])), "t^2+t+1");
        let f4 = FieldConfig::for_q(4).unwrap().build().unwrap();
        assert_eq!(f4.fmt_poly(&p(&[3, 2])), "[u]t+[u+1]");
    }

    #[test]
    fn xgcd_and_inverse() {
        let f = FieldConfig::prime(3).build().unwrap();
        let m = p(&[1, 0, 1]); // t^2+1, irreducible over F_3
        for a in [p(&[1, 1]), p(&[2]), p(&[0, 2])] {
            let inv = f.poly_inv_mod(&a, &m).unwrap();
            assert!(f.poly_mulmod(&a, &inv, &m).is_one());
        }
    }
}
