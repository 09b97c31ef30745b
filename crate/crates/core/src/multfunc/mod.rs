//! Completely multiplicative functions on monic polynomials.

pub mod modified;
pub mod pretentious;

use std::collections::BTreeMap;
use std::fmt;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex};

use lru::LruCache;
use num_complex::Complex64;
use num_integer::Integer;

pub use modified::{parse_modchar, ModifiedChar};
pub use pretentious::{dirichlet_series_coeffs, euler_product_coeffs, long_distance_min, pretentious_distance, DistanceMin};

use crate::chars::{ArchimedeanTwist, DirichletChar, ShortIntervalChar};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::{Elem, Field};
use crate::lex::lex_index;
use crate::phase::{Phase, RootOfUnity, Value};
use crate::poly::Poly;
use crate::sieve::MonicSieve;

pub const DEFAULT_CACHE: usize = 4096;

/// Value at irreducibles that carry no explicit entry.
#[derive(Clone, Debug)]
pub enum PrimeRule {
    One,
    /// f(P) = c for every P (c = -1 gives the Liouville function).
    Constant(Phase),
    /// f(P) = chi(P).
    Dirichlet(DirichletChar),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Apply,
    Remove,
}

pub struct MultFn {
    field: Arc<Field>,
    rule: PrimeRule,
    overrides: BTreeMap<Poly, Phase>,
    shorts: Vec<ShortIntervalChar>,
    theta: Phase,
    cache: Mutex<LruCache<u64, Value>>,
}

impl Clone for MultFn {
    fn clone(&self) -> Self {
        let cap = self.cache.lock().expect("cache lock").cap();
        MultFn {
            field: self.field.clone(),
            rule: self.rule.clone(),
            overrides: self.overrides.clone(),
            shorts: self.shorts.clone(),
            theta: self.theta,
            cache: Mutex::new(LruCache::new(cap)),
        }
    }
}

impl fmt::Debug for MultFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultFn")
            .field("rule", &self.rule)
            .field("overrides", &self.overrides.len())
            .field("shorts", &self.shorts)
            .field("theta", &self.theta)
            .finish()
    }
}

impl MultFn {
    pub fn new(field: Arc<Field>, rule: PrimeRule) -> MultFn {
        MultFn {
            field,
            rule,
            overrides: BTreeMap::new(),
            shorts: Vec::new(),
            theta: Phase::ONE,
            cache: Mutex::new(LruCache::new(NonZeroUsize::new(DEFAULT_CACHE).unwrap())),
        }
    }

    pub fn one(field: Arc<Field>) -> MultFn {
        MultFn::new(field, PrimeRule::One)
    }

    pub fn liouville(field: Arc<Field>) -> MultFn {
        MultFn::new(field, PrimeRule::Constant(Phase::MINUS_ONE))
    }

    pub fn character(chi: DirichletChar) -> MultFn {
        MultFn::new(chi.field().clone(), PrimeRule::Dirichlet(chi))
    }

    /// Sets f(P) for the given monic irreducibles, overriding the rule.
    pub fn with_prime_values(mut self, values: impl IntoIterator<Item = (Poly, Phase)>) -> Result<MultFn> {
        for (p, v) in values {
            self.field.check_poly(&p)?;
            if !p.is_monic() || p.d() == 0 {
                return Err(Error::InvalidArgument(format!("{} is not a monic prime", self.field.fmt_poly(&p))));
            }
            self.overrides.insert(p, v);
        }
        self.cache.lock().expect("cache lock").clear();
        Ok(self)
    }

    pub fn with_cache_capacity(self, cap: usize) -> MultFn {
        let cap = NonZeroUsize::new(cap.max(1)).unwrap();
        MultFn { cache: Mutex::new(LruCache::new(cap)), ..self }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn rule(&self) -> &PrimeRule {
        &self.rule
    }
    pub fn overrides(&self) -> &BTreeMap<Poly, Phase> {
        &self.overrides
    }
    pub fn short_chars(&self) -> &[ShortIntervalChar] {
        &self.shorts
    }
    pub fn theta(&self) -> Phase {
        self.theta
    }

    /// True when every value is an exact root of unity (or zero).
    pub fn is_rational(&self) -> bool {
        let rule_ok = match &self.rule {
            PrimeRule::Constant(c) => c.as_rational().is_some(),
            _ => true,
        };
        rule_ok && self.theta.as_rational().is_some() && self.overrides.values().all(|v| v.as_rational().is_some())
    }

    /// f(c) for a nonzero constant: chi(c) under a Dirichlet rule, otherwise 1.
    pub fn constant_value(&self, c: Elem) -> Value {
        match &self.rule {
            PrimeRule::Dirichlet(chi) => match chi.eval(&Poly::constant(c)) {
                Some(r) => r.into(),
                None => Value::Zero,
            },
            _ => Value::ONE,
        }
    }

    fn rule_value(&self, p: &Poly) -> Value {
        match &self.rule {
            PrimeRule::One => Value::ONE,
            PrimeRule::Constant(c) => (*c).into(),
            PrimeRule::Dirichlet(chi) => chi.eval(p).map_or(Value::Zero, Value::from),
        }
    }

    fn twist_value(&self, m: &Poly) -> Value {
        let mut v = Value::Unit(self.theta.pow(m.d() as i64));
        for xi in &self.shorts {
            v = v.mul(xi.eval(m).into());
        }
        v
    }

    /// f(P) at a monic irreducible P.
    pub fn prime_value(&self, p: &Poly) -> Value {
        let base = self.overrides.get(p).map_or_else(|| self.rule_value(p), |&v| Value::Unit(v));
        base.mul(self.twist_value(p))
    }

    pub fn prime_values(&self, primes: &[Poly]) -> Vec<Value> {
        primes.iter().map(|p| self.prime_value(p)).collect()
    }

    /// f(G); non-monic G use f(cG') = f(c) f(G').
    pub fn eval(&self, g: &Poly) -> Result<Value> {
        if g.is_zero() {
            return Err(Error::ZeroInput);
        }
        self.field.check_poly(g)?;
        let unit = self.constant_value(g.lead());
        let m = self.field.poly_monic(g);
        Ok(unit.mul(self.eval_monic(&m)))
    }

    fn eval_monic(&self, m: &Poly) -> Value {
        if m.d() == 0 {
            return Value::ONE;
        }
        let key = lex_index(&self.field, m).ok();
        if let Some(k) = key {
            if let Some(v) = self.cache.lock().expect("cache lock").get(&k) {
                return *v;
            }
        }
        let f = &self.field;
        let mut rest = m.clone();
        let mut val = Value::ONE;
        for (p, &v) in &self.overrides {
            if p.d() > rest.d() {
                continue;
            }
            while let Some(quot) = f.poly_div_exact(&rest, p) {
                rest = quot;
                val = val.mul(Value::Unit(v));
            }
        }
        if rest.d() > 0 {
            val = val.mul(match &self.rule {
                PrimeRule::One => Value::ONE,
                PrimeRule::Constant(c) if c.is_one() => Value::ONE,
                PrimeRule::Constant(c) => {
                    let omega: u32 = factor(f, &rest).expect("nonzero").factors.iter().map(|(_, e)| e).sum();
                    Value::Unit(c.pow(omega as i64))
                }
                PrimeRule::Dirichlet(chi) => chi.eval(&rest).map_or(Value::Zero, Value::from),
            });
        }
        val = val.mul(self.twist_value(m));
        if let Some(k) = key {
            self.cache.lock().expect("cache lock").put(k, val);
        }
        val
    }

    pub fn eval_complex(&self, g: &Poly) -> Result<Complex64> {
        Ok(self.eval(g)?.to_complex())
    }

    /// The pointwise product f xi e_theta (apply) or f conj(xi) e_{-theta} (remove).
    pub fn twist(&self, xi: &ShortIntervalChar, theta: ArchimedeanTwist, dir: Direction) -> MultFn {
        let mut out = self.clone();
        let (xi, th) = match dir {
            Direction::Apply => (xi.clone(), theta.theta),
            Direction::Remove => (xi.conj(), theta.theta.conj()),
        };
        if !xi.is_trivial() {
            // cancel against an inverse already present
            if let Some(i) = out.shorts.iter().position(|s| *s == xi.conj()) {
                out.shorts.remove(i);
            } else {
                out.shorts.push(xi);
            }
        }
        out.theta = out.theta.mul(th);
        out
    }

    /// c_q = sum over c in F_q^x of f(c).
    pub fn c_q(&self) -> i64 {
        let s: Complex64 = self.field.nonzero().map(|c| self.constant_value(c).to_complex()).sum();
        s.re.round() as i64
    }

    /// Values on M_d for all d <= sieve degree, in offset order.
    pub fn degree_tables(&self, sieve: &MonicSieve) -> Vec<Vec<Complex64>> {
        let pv: Vec<Complex64> = self.prime_values(sieve.primes()).iter().map(Value::to_complex).collect();
        sieve.tabulate(&pv, Complex64::new(1.0, 0.0), |a, b| a * b)
    }

    /// Exact tables: numerators over a common denominator L, `u32::MAX` for the value 0.
    /// `None` unless every prime value is rational.
    pub fn exact_degree_tables(&self, sieve: &MonicSieve) -> Option<(u64, Vec<Vec<u32>>)> {
        let pv = self.prime_values(sieve.primes());
        let mut l = 1u64;
        for v in &pv {
            if let Value::Unit(p) = v {
                l = l.lcm(&p.as_rational()?.den());
            }
        }
        let nums: Vec<u32> = pv
            .iter()
            .map(|v| match v {
                Value::Zero => u32::MAX,
                Value::Unit(p) => p.as_rational().unwrap().numerator_over(l).unwrap() as u32,
            })
            .collect();
        let l32 = l as u32;
        let tabs = sieve.tabulate(&nums, 0, |a, b| if a == u32::MAX || b == u32::MAX { u32::MAX } else { (a + b) % l32 });
        Some((l, tabs))
    }
}

/// e(num / den) for a table entry, 0 for the sentinel.
pub fn table_value(num: u32, den: u64) -> Complex64 {
    if num == u32::MAX {
        Complex64::new(0.0, 0.0)
    } else {
        RootOfUnity::new(num as i64, den).to_complex()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{characters, short_chars, UnitGroup};
    use crate::enumerate::monics_up_to;
    use crate::field::FieldConfig;
    use crate::literal::parse_poly;

    #[test]
    fn liouville_and_one() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        let lam = MultFn::liouville(f2.clone());
        let g = parse_poly(&f2, "t^3*(t+1)").unwrap();
        assert_eq!(lam.eval(&g).unwrap(), Value::ONE);
        assert_eq!(lam.eval(&Poly::t()).unwrap(), Value::Unit(Phase::MINUS_ONE));
        assert_eq!(MultFn::one(f2.clone()).eval(&Poly::one()).unwrap(), Value::ONE);
        assert!(lam.eval(&Poly::zero()).is_err());
    }

    #[test]
    fn multiplicative_exhaustive_f2() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        let q = parse_poly(&f2, "t^2+t+1").unwrap();
        let chi = characters(&UnitGroup::new(f2.clone(), &q).unwrap())[1].clone();
        let xi = short_chars(&f2, 2).unwrap()[3].clone();
        let f = MultFn::character(chi)
            .with_prime_values([(q.clone(), Phase::rational(1, 6))])
            .unwrap()
            .twist(&xi, ArchimedeanTwist::new(Phase::rational(1, 5)), Direction::Apply);
        let all: Vec<Poly> = monics_up_to(&f2, 5).collect();
        for a in &all {
            for b in all.iter().take(40) {
                let lhs = f.eval(&f2.poly_mul(a, b)).unwrap();
                assert_eq!(lhs, f.eval(a).unwrap().mul(f.eval(b).unwrap()));
            }
        }
    }

    #[test]
    fn twist_round_trip_and_c_q() {
        let f3 = FieldConfig::prime(3).build().unwrap();
        let chi = characters(&UnitGroup::new(f3.clone(), &Poly::t()).unwrap())[1].clone();
        let f = MultFn::character(chi);
        assert_eq!(f.c_q(), 0);
        assert_eq!(MultFn::one(f3.clone()).c_q(), 2);
        let xi = short_chars(&f3, 2).unwrap()[5].clone();
        let th = ArchimedeanTwist::new(Phase::real(0.123));
        let g = f.twist(&xi, th, Direction::Apply).twist(&xi, th, Direction::Remove);
        for m in monics_up_to(&f3, 4) {
            assert!((g.eval_complex(&m).unwrap() - f.eval_complex(&m).unwrap()).norm() < 1e-12);
        }
        let h = MultFn::one(f3.clone()).twist(
            &short_chars(&f3, 0).unwrap()[0],
            ArchimedeanTwist::new(Phase::rational(1, 2)),
            Direction::Apply,
        );
        assert_eq!(h.eval(&parse_poly(&f3, "t^3+2").unwrap()).unwrap(), Value::Unit(Phase::MINUS_ONE));
    }

    #[test]
    fn tables_match_eval() {
        let f3 = FieldConfig::prime(3).build().unwrap();
        let q = parse_poly(&f3, "t^2+1").unwrap();
        let chi = characters(&UnitGroup::new(f3.clone(), &q).unwrap())[3].clone();
        let f = MultFn::character(chi).with_prime_values([(q, Phase::rational(1, 3))]).unwrap();
        let sieve = MonicSieve::new(f3.clone(), 5).unwrap();
        let (l, ex) = f.exact_degree_tables(&sieve).unwrap();
        let cx = f.degree_tables(&sieve);
        for d in 0..=5 {
            for (i, m) in crate::enumerate::monics_of_degree(&f3, d).enumerate() {
                let v = f.eval_complex(&m).unwrap();
                assert!((v - cx[d][i]).norm() < 1e-12);
                assert!((v - table_value(ex[d][i], l)).norm() < 1e-12);
            }
        }
    }
}
