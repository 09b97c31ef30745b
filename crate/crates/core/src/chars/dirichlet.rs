//! Dirichlet characters modulo Q as exponent tuples against the unit-group generators.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use super::unit_group::UnitGroup;
use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::Field;
use crate::phase::RootOfUnity;
use crate::poly::Poly;

#[derive(Clone)]
pub struct DirichletChar {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
    /// Per-generator numerators over the group exponent E: chi(g_i) = e(w_i / E).
    weights: Vec<u64>,
    conductor: Arc<OnceLock<Poly>>,
}

impl fmt::Debug for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

impl PartialEq for DirichletChar {
    fn eq(&self, o: &Self) -> bool {
        self.modulus() == o.modulus() && self.exps == o.exps && *self.field() == *o.field()
    }
}

impl DirichletChar {
    pub fn new(group: Arc<UnitGroup>, exps: Vec<u64>) -> Result<DirichletChar> {
        if exps.len() != group.orders().len() {
            return Err(Error::InvalidArgument(format!(
                "exponent tuple has {} entries, group has {} generators",
                exps.len(),
                group.orders().len()
            )));
        }
        let e = group.exponent();
        let exps: Vec<u64> = exps.iter().zip(group.orders()).map(|(&x, &d)| x % d).collect();
        let weights = exps.iter().zip(group.orders()).map(|(&x, &d)| x * (e / d)).collect();
        Ok(DirichletChar { group, exps, weights, conductor: Arc::new(OnceLock::new()) })
    }

    pub fn principal(group: Arc<UnitGroup>) -> DirichletChar {
        let n = group.orders().len();
        DirichletChar::new(group, vec![0; n]).expect("arity matches")
    }

    /// The character with the given canonical index (mixed radix, first coordinate fastest).
    pub fn from_index(group: Arc<UnitGroup>, index: u64) -> Result<DirichletChar> {
        if index >= group.order() {
            return Err(Error::InvalidArgument(format!("character index {index} out of range")));
        }
        let exps = group.decomposition().exponents(index);
        DirichletChar::new(group, exps)
    }

    pub fn index(&self) -> u64 {
        self.group.decomposition().code_of(&self.exps)
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }
    pub fn field(&self) -> &Arc<Field> {
        self.group.field()
    }
    pub fn modulus(&self) -> &Poly {
        self.group.modulus()
    }
    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }
    /// Common denominator of all values (the group exponent).
    pub fn denominator(&self) -> u64 {
        self.group.exponent()
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.exps.iter().zip(self.group.orders()).fold(1, |acc, (&e, &d)| acc.lcm(&(d / e.gcd(&d))))
    }

    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Numerator over [`Self::denominator`] at a residue code; `None` off the units.
    #[inline]
    pub fn eval_code(&self, code: u32) -> Option<u64> {
        self.group.dlog_code(code).map(|d| self.eval_dlog(d))
    }

    /// Numerator over [`Self::denominator`] at a unit given by its mixed-radix discrete log.
    #[inline]
    pub fn eval_dlog(&self, dlog: u32) -> u64 {
        let mut c = dlog as u64;
        let mut acc = 0u64;
        for (&w, &o) in self.weights.iter().zip(self.group.orders()) {
            acc += w * (c % o);
            c /= o;
        }
        acc % self.denominator()
    }

    /// chi(A), with `None` standing for the value 0.
    pub fn eval(&self, a: &Poly) -> Option<RootOfUnity> {
        let code = self.group.ring().encode(a);
        self.eval_code(code).map(|n| RootOfUnity::new(n as i64, self.denominator()))
    }

    /// True when chi is trivial on the constants F_q^x.
    pub fn is_even(&self) -> bool {
        let f = self.field();
        self.eval(&Poly::constant(f.generator())).is_some_and(|r| r.is_one())
    }

    pub fn conj(&self) -> DirichletChar {
        let exps = self.exps.iter().zip(self.group.orders()).map(|(&e, &d)| (d - e) % d).collect();
        DirichletChar::new(self.group.clone(), exps).expect("arity matches")
    }

    pub fn mul(&self, o: &DirichletChar) -> Result<DirichletChar> {
        if self.modulus() != o.modulus() {
            return Err(Error::InvalidArgument("characters have different moduli".into()));
        }
        let exps = self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect();
        DirichletChar::new(self.group.clone(), exps)
    }

    /// Least monic Q' | Q such that chi is trivial on units congruent to 1 mod Q'.
    pub fn conductor(&self) -> &Poly {
        self.conductor.get_or_init(|| self.compute_conductor())
    }

    fn compute_conductor(&self) -> Poly {
        let f = self.field();
        let q = self.modulus();
        if q.d() == 0 || self.is_principal() {
            return Poly::one();
        }
        let fz = factor(f, q).expect("nonzero modulus");
        let ring = self.group.ring();
        let nontrivial: Vec<Poly> = self
            .group
            .unit_codes()
            .filter(|&c| self.eval_code(c) != Some(0))
            .map(|c| f.poly_sub(&ring.decode(c), &Poly::one()))
            .collect();
        divisors(f, &fz)
            .into_iter()
            .find(|d| nontrivial.iter().all(|r| !f.divides(d, r)))
            .expect("Q itself qualifies")
    }

    /// chi is primitive iff for every P | Q it is nontrivial on the units congruent to 1 mod Q/P.
    pub fn is_primitive(&self) -> bool {
        let f = self.field();
        let q = self.modulus();
        if q.d() == 0 {
            return true;
        }
        if let Some(c) = self.conductor.get() {
            return c == q;
        }
        let ring = self.group.ring();
        let fz = factor(f, q).expect("nonzero modulus");
        let primitive = fz.primes().all(|p| {
            let cof = f.poly_div_exact(q, p).expect("prime divisor");
            (0..crate::enumerate::monic_count(f.q(), p.d()).expect("small prime")).any(|k| {
                let u = f.poly_add(&Poly::one(), &f.poly_mul(&cof, &crate::lex::lex_unrank(f, k)));
                self.eval_code(ring.encode(&u)).is_some_and(|v| v != 0)
            })
        });
        primitive
    }

    /// The primitive character mod the conductor that induces this one.
    pub fn primitive_part(&self) -> Result<DirichletChar> {
        let f = self.field().clone();
        let cond = self.conductor().clone();
        let star_group = UnitGroup::build(f.clone(), &cond)?;
        let ring = self.group.ring();
        let q = self.modulus();
        let mut exps = Vec::new();
        for (h, &d) in star_group.generators().iter().zip(star_group.orders()) {
            // a unit mod Q congruent to h mod the conductor
            let lift = (0..ring.size() as u32)
                .map(|c| ring.decode(c))
                .find(|r| f.poly_rem(&f.poly_sub(r, h), &cond).unwrap().is_zero() && f.poly_gcd(r, q).is_one())
                .ok_or_else(|| Error::Internal("no unit lift of a conductor generator".into()))?;
            let v = self.eval(&lift).expect("lift is a unit");
            exps.push(v.numerator_over(d).ok_or_else(|| Error::Internal("value order exceeds generator order".into()))?);
        }
        DirichletChar::new(star_group, exps)
    }

    /// Serialisation `(Q-literal, (e_1,...,e_r))`.
    pub fn literal(&self) -> String {
        let e: Vec<String> = self.exps.iter().map(u64::to_string).collect();
        format!("({}, ({}))", self.field().fmt_poly(self.modulus()), e.join(","))
    }
}

/// All phi(Q) characters mod Q in canonical index order; index 0 is principal.
pub fn characters(group: &Arc<UnitGroup>) -> Vec<DirichletChar> {
    (0..group.order()).map(|i| DirichletChar::from_index(group.clone(), i).expect("index in range")).collect()
}

/// The character chi(A) = chi*(A) 1_{(A,Q)=1} modulo a multiple Q of the modulus of chi*.
pub fn induce(star: &DirichletChar, q: &Poly) -> Result<DirichletChar> {
    let f = star.field().clone();
    if !f.divides(star.modulus(), q) {
        return Err(Error::InvalidArgument("modulus of the inducing character must divide Q".into()));
    }
    let group = UnitGroup::build(f.clone(), q)?;
    let mut exps = Vec::new();
    for (g, &d) in group.generators().iter().zip(group.orders()) {
        let v = star.eval(g).expect("a unit mod Q is a unit mod a divisor");
        exps.push(v.numerator_over(d).ok_or_else(|| Error::Internal("value order exceeds generator order".into()))?);
    }
    DirichletChar::new(group, exps)
}

/// Parses `(Q-literal, (e_1,...,e_r))`.
pub fn parse_char(f: &Arc<Field>, text: &str) -> Result<DirichletChar> {
    let s = text.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::Parse { pos: 0, msg: "expected (Q, (exponents))".into() })?;
    let split = inner.rfind('(').ok_or_else(|| Error::Parse { pos: 0, msg: "missing exponent tuple".into() })?;
    let q_text = inner[..split].trim().trim_end_matches(',');
    let q = crate::literal::parse_poly(f, q_text)?;
    let exps = parse_tuple(&inner[split..])?;
    let group = UnitGroup::build(f.clone(), &q)?;
    DirichletChar::new(group, exps)
}

/// Parses `(a,b,...)` into integers; `()` is the empty tuple.
pub fn parse_tuple(text: &str) -> Result<Vec<u64>> {
    let t = text.trim();
    let body = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("expected a tuple, got {t:?}") })?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad exponent {x:?}") }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;
    use crate::literal::parse_poly;

    fn group(q: u32, m: &str) -> Arc<UnitGroup> {
        let f = FieldConfig::for_q(q).unwrap().build().unwrap();
        let m = parse_poly(&f, m).unwrap();
        UnitGroup::new(f, &m).unwrap()
    }

    #[test]
    fn cubic_characters() {
        let g = group(2, "t^2+t+1");
        let chars = characters(&g);
        assert_eq!(chars.len(), 3);
        assert!(chars[0].is_principal());
        let vals: Vec<RootOfUnity> = chars[1..].iter().map(|c| c.eval(&Poly::t()).unwrap()).collect();
        assert_eq!(vals, vec![RootOfUnity::new(1, 3), RootOfUnity::new(2, 3)]);
    }

    #[test]
    fn primitive_count_and_conductors() {
        let g = group(2, "t^2*(t+1)^2");
        let prim: Vec<_> = characters(&g).into_iter().filter(|c| c.is_primitive()).collect();
        assert_eq!(prim.len(), 1);
        assert_eq!(characters(&g)[0].conductor(), &Poly::one());

        let f = g.field().clone();
        let star = characters(&group(2, "t^2+t+1"))[1].clone();
        let q = parse_poly(&f, "t*(t^2+t+1)").unwrap();
        let chi = induce(&star, &q).unwrap();
        assert_eq!(chi.conductor(), star.modulus());
        assert_eq!(chi.primitive_part().unwrap().eval(&Poly::t()), star.eval(&Poly::t()));
    }

    #[test]
    fn literal_round_trip() {
        let g = group(3, "t^2");
        for c in characters(&g) {
            let back = parse_char(g.field(), &c.literal()).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn parity() {
        let g = group(3, "t");
        let chars = characters(&g);
        assert!(chars[0].is_even());
        assert!(!chars[1].is_even());
    }
}
