//! Irreducibility testing and factorisation into monic irreducibles.
//!
//! Small inputs use trial division by the irreducible tables; larger ones go through
//! squarefree decomposition, distinct-degree factorisation and Cantor-Zassenhaus
//! equal-degree splitting driven by a ChaCha stream with a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::lex::lex_cmp;
use crate::poly::Poly;

/// Seed of the equal-degree splitting stream.
pub const FACTOR_SEED: u64 = 0x5eed_f00d;

/// Trial division is used while the divisor tables it needs hold at most this many
/// candidates (q^{deg/2} bounds their size).
pub const TRIAL_DIVISION_BUDGET: u64 = 1 << 11;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    /// Distinct monic irreducibles with exponents, ordered by (degree, lex index).
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn rebuild(&self, f: &Field) -> Poly {
        let mut acc = Poly::constant(self.unit);
        for (p, e) in &self.factors {
            acc = f.poly_mul(&acc, &f.poly_pow(p, *e as u64));
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn primes(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Exponent of `p` (zero if absent).
    pub fn valuation(&self, p: &Poly) -> u32 {
        self.factors.iter().find(|(x, _)| x == p).map_or(0, |(_, e)| *e)
    }
}

/// Rabin's test. Accepts any nonzero polynomial; constants are not irreducible.
pub fn is_irreducible(f: &Field, g: &Poly) -> Result<bool> {
    let n = g.deg().ok_or(Error::ZeroInput)?;
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let g = f.poly_monic(g);
    let q = f.q() as u128;
    let t = Poly::t();
    // t^{q^i} mod g by repeated q-th powers
    let frob = |x: &Poly| f.poly_powmod(x, q, &g);
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(t.clone());
    for i in 0..n {
        let next = frob(&powers[i]);
        powers.push(next);
    }
    if powers[n] != f.poly_rem(&t, &g)? {
        return Ok(false);
    }
    for r in prime_divisors(n as u64) {
        let m = n / r as usize;
        let h = f.poly_sub(&powers[m], &t);
        if !f.poly_gcd(&h, &g).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Canonical factorisation of a nonzero polynomial.
pub fn factor(f: &Field, g: &Poly) -> Result<Factorization> {
    f.check_poly(g)?;
    let n = g.deg().ok_or(Error::ZeroInput)?;
    let unit = g.lead();
    let monic = f.poly_monic(g);
    let mut factors = if n == 0 {
        Vec::new()
    } else if trial_division_applies(f, n) {
        trial_division(f, &monic)
    } else {
        cantor_zassenhaus(f, &monic)
    };
    factors.sort_by(|a, b| lex_cmp(f, &a.0, &b.0));
    Ok(Factorization { unit, factors })
}

fn trial_division_applies(f: &Field, n: usize) -> bool {
    (f.q() as u64).checked_pow((n / 2) as u32).is_some_and(|c| c <= TRIAL_DIVISION_BUDGET)
}

/// Factorisation by trial division against the irreducibles of degree <= deg/2.
pub fn trial_division(f: &Field, g: &Poly) -> Vec<(Poly, u32)> {
    let mut rest = f.poly_monic(g);
    let mut out = Vec::new();
    let mut d = 1;
    while let Some(n) = rest.deg() {
        if 2 * d > n {
            if n > 0 {
                out.push((rest, 1));
            }
            break;
        }
        for p in crate::enumerate::irreducibles_of_degree(f, d).iter() {
            let mut e = 0;
            while let Some(qt) = f.poly_div_exact(&rest, p) {
                rest = qt;
                e += 1;
            }
            if e > 0 {
                out.push((p.clone(), e));
            }
        }
        d += 1;
    }
    merge(out)
}

fn merge(mut v: Vec<(Poly, u32)>) -> Vec<(Poly, u32)> {
    v.sort();
    let mut out: Vec<(Poly, u32)> = Vec::with_capacity(v.len());
    for (p, e) in v {
        match out.last_mut() {
            Some((last, le)) if *last == p => *le += e,
            _ => out.push((p, e)),
        }
    }
    out
}

/// Squarefree decomposition of a monic polynomial: pairs (squarefree part, multiplicity).
pub fn squarefree_decomposition(f: &Field, g: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    sqf_rec(f, &f.poly_monic(g), 1, &mut out);
    out
}

fn sqf_rec(f: &Field, g: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) {
    if g.deg().unwrap_or(0) == 0 {
        return;
    }
    let d = f.poly_derivative(g);
    if d.is_zero() {
        sqf_rec(f, &pth_root(f, g), mult * f.p(), out);
        return;
    }
    let mut c = f.poly_gcd(g, &d);
    let mut w = f.poly_div_exact(g, &c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = f.poly_gcd(&w, &c);
        let z = f.poly_div_exact(&w, &y).expect("gcd divides");
        if !z.is_one() {
            out.push((z, i * mult));
        }
        i += 1;
        w = y;
        c = f.poly_div_exact(&c, &w).expect("gcd divides");
    }
    if !c.is_one() {
        sqf_rec(f, &pth_root(f, &c), mult * f.p(), out);
    }
}

/// g(t) = h(t^p) with g' = 0; returns h^{1/p} coefficientwise (a^{1/p} = a^{q/p}).
fn pth_root(f: &Field, g: &Poly) -> Poly {
    let p = f.p() as usize;
    let e = (f.q() / f.p()) as u64;
    Poly::from_coeffs(g.coeffs().iter().step_by(p).map(|&c| f.pow(c, e)).collect())
}

/// Distinct-degree factorisation of a squarefree monic polynomial.
pub fn distinct_degree(f: &Field, g: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut h = Poly::t();
    let mut d = 0;
    while let Some(n) = rest.deg() {
        if n == 0 {
            break;
        }
        d += 1;
        if 2 * d > n {
            out.push((rest.clone(), n));
            break;
        }
        h = f.poly_powmod(&h, f.q() as u128, &rest);
        let part = f.poly_gcd(&f.poly_sub(&h, &Poly::t()), &rest);
        if !part.is_one() {
            rest = f.poly_div_exact(&rest, &part).expect("gcd divides");
            h = f.poly_rem(&h, &rest).expect("nonzero");
            out.push((part, d));
        }
    }
    out
}

/// Splits a product of distinct irreducibles of degree d.
pub fn equal_degree(f: &Field, g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = g.d();
    if n == d {
        return vec![g.clone()];
    }
    loop {
        let a = Poly::from_coeffs((0..n).map(|_| rng.gen_range(0..f.q())).collect());
        if a.deg().unwrap_or(0) == 0 {
            continue;
        }
        let b = if f.p() == 2 {
            // trace map a + a^2 + ... + a^{2^{kd-1}}
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..(f.k() as usize * d) {
                cur = f.poly_mulmod(&cur, &cur, g);
                acc = f.poly_add(&acc, &cur);
            }
            acc
        } else {
            let e = ((f.q() as u128).pow(d as u32) - 1) / 2;
            f.poly_sub(&f.poly_powmod(&a, e, g), &Poly::one())
        };
        let h = f.poly_gcd(&b, g);
        if let Some(hd) = h.deg() {
            if hd > 0 && hd < n {
                let other = f.poly_div_exact(g, &h).expect("gcd divides");
                let mut out = equal_degree(f, &h, d, rng);
                out.extend(equal_degree(f, &other, d, rng));
                return out;
            }
        }
    }
}

fn cantor_zassenhaus(f: &Field, g: &Poly) -> Vec<(Poly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(f, g) {
        for (block, d) in distinct_degree(f, &part) {
            for p in equal_degree(f, &block, d, &mut rng) {
                out.push((p, mult));
            }
        }
    }
    merge(out)
}
