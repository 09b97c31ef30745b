//! Arithmetic functions on F_q[t].

use crate::error::{Error, Result};
use crate::factor::{factor, Factorization};
use crate::field::Field;
use crate::poly::Poly;

/// Integer Moebius function.
pub fn mobius_int(mut n: u64) -> i32 {
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// 2-adic valuation of a positive integer.
pub fn v2(n: u64) -> u32 {
    n.trailing_zeros()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithFn {
    VonMangoldt,
    Omega,
    BigOmega,
    Liouville,
    Mobius,
    Phi,
    Rad,
    Valuation(Poly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithValue {
    Int(i128),
    Poly(Poly),
}

fn monic_factorization(f: &Field, g: &Poly) -> Result<Factorization> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !g.is_monic() {
        return Err(Error::InvalidArgument("argument must be monic".into()));
    }
    factor(f, g)
}

pub fn arith_fn(f: &Field, g: &Poly, which: &ArithFn) -> Result<ArithValue> {
    use ArithValue::*;
    Ok(match which {
        ArithFn::Omega => Int(omega(&factor(f, nonzero(g)?)?) as i128),
        ArithFn::BigOmega => Int(big_omega(&factor(f, nonzero(g)?)?) as i128),
        ArithFn::Liouville => Int(liouville(&factor(f, nonzero(g)?)?) as i128),
        ArithFn::Valuation(p) => Int(valuation(f, g, p)? as i128),
        ArithFn::VonMangoldt => Int(von_mangoldt(&monic_factorization(f, g)?) as i128),
        ArithFn::Mobius => Int(mobius(&monic_factorization(f, g)?) as i128),
        ArithFn::Phi => Int(phi(f.q(), &monic_factorization(f, g)?)),
        ArithFn::Rad => Poly(rad(f, &monic_factorization(f, g)?)),
    })
}

fn nonzero(g: &Poly) -> Result<&Poly> {
    if g.is_zero() {
        Err(Error::ZeroInput)
    } else {
        Ok(g)
    }
}

/// deg P if the input is a power of the irreducible P, else 0.
pub fn von_mangoldt(fz: &Factorization) -> usize {
    match fz.factors.as_slice() {
        [(p, _)] => p.d(),
        _ => 0,
    }
}

pub fn omega(fz: &Factorization) -> usize {
    fz.factors.len()
}

pub fn big_omega(fz: &Factorization) -> u32 {
    fz.factors.iter().map(|(_, e)| e).sum()
}

pub fn liouville(fz: &Factorization) -> i32 {
    if big_omega(fz).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn mobius(fz: &Factorization) -> i32 {
    if fz.factors.iter().any(|(_, e)| *e > 1) {
        0
    } else {
        liouville(fz)
    }
}

/// |(F_q[t]/G)^x| = prod P^e: q^{(e-1) deg P}(q^{deg P} - 1).
pub fn phi(q: u32, fz: &Factorization) -> i128 {
    fz.factors
        .iter()
        .map(|(p, e)| {
            let qd = (q as i128).pow(p.d() as u32);
            qd.pow(e - 1) * (qd - 1)
        })
        .product()
}

pub fn rad(f: &Field, fz: &Factorization) -> Poly {
    fz.factors.iter().fold(Poly::one(), |acc, (p, _)| f.poly_mul(&acc, p))
}

/// Exponent of the irreducible P in G.
pub fn valuation(f: &Field, g: &Poly, p: &Poly) -> Result<u32> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if p.deg().unwrap_or(0) == 0 {
        return Err(Error::InvalidArgument("valuation at a constant".into()));
    }
    let mut rest = g.clone();
    let mut e = 0;
    while let Some(qt) = f.poly_div_exact(&rest, p) {
        rest = qt;
        e += 1;
    }
    Ok(e)
}

/// All monic divisors, ordered by degree then lex index.
pub fn divisors(f: &Field, fz: &Factorization) -> Vec<Poly> {
    let mut out = vec![Poly::one()];
    for (p, e) in &fz.factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*e {
                cur = f.poly_mul(&cur, p);
                next.push(cur.clone());
            }
        }
        out = next;
    }
    out.sort_by(|a, b| crate::lex::lex_cmp(f, a, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    #[test]
    fn examples() {
        let f = FieldConfig::prime(2).build().unwrap();
        let g = Poly::from_coeffs(vec![1, 1, 1]);
        assert_eq!(arith_fn(&f, &g, &ArithFn::Phi).unwrap(), ArithValue::Int(3));
        assert_eq!(arith_fn(&f, &Poly::monomial(1, 2), &ArithFn::Mobius).unwrap(), ArithValue::Int(0));
        assert_eq!(arith_fn(&f, &Poly::monomial(1, 3), &ArithFn::VonMangoldt).unwrap(), ArithValue::Int(1));
        assert_eq!(arith_fn(&f, &Poly::zero(), &ArithFn::Phi), Err(Error::ZeroInput));
        let tt1 = Poly::from_coeffs(vec![0, 0, 1, 1]); // t^2 (t+1)
        assert_eq!(arith_fn(&f, &tt1, &ArithFn::Rad).unwrap(), ArithValue::Poly(Poly::from_coeffs(vec![0, 1, 1])));
        assert_eq!(arith_fn(&f, &tt1, &ArithFn::Valuation(Poly::t())).unwrap(), ArithValue::Int(2));
        assert_eq!(arith_fn(&f, &tt1, &ArithFn::Liouville).unwrap(), ArithValue::Int(-1));
    }

    #[test]
    fn integer_helpers() {
        assert_eq!(mobius_int(1), 1);
        assert_eq!(mobius_int(6), 1);
        assert_eq!(mobius_int(12), 0);
        assert_eq!(mobius_int(7), -1);
        assert_eq!(v2(12), 2);
    }

    #[test]
    fn divisor_list() {
        let f = FieldConfig::prime(2).build().unwrap();
        let fz = factor(&f, &Poly::from_coeffs(vec![0, 0, 1, 1])).unwrap();
        let d = divisors(&f, &fz);
        assert_eq!(d.len(), 6);
        assert!(d.iter().all(|x| f.divides(x, &Poly::from_coeffs(vec![0, 0, 1, 1]))));
    }
}
