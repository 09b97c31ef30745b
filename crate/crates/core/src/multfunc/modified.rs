//! Modified characters: f(P) = chi(P) for P not dividing Q, free unit values at P | Q.

use std::sync::Arc;

use super::MultFn;
use crate::chars::dirichlet::{parse_tuple, DirichletChar};
use crate::chars::UnitGroup;
use crate::error::{Error, Result};
use crate::factor::{factor, Factorization};
use crate::field::{Field, FieldConfig};
use crate::lex::lex_cmp;
use crate::literal::parse_poly;
use crate::phase::{Phase, RootOfUnity};
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct ModifiedChar {
    chi: DirichletChar,
    factorization: Factorization,
    /// (P, f(P)) for the distinct primes P | Q in lexicographic order.
    twists: Vec<(Poly, Phase)>,
}

impl ModifiedChar {
    /// `chi` must be primitive; `twists` must name each prime divisor of Q exactly once.
    pub fn new(chi: DirichletChar, twists: Vec<(Poly, Phase)>) -> Result<ModifiedChar> {
        if !chi.is_primitive() {
            return Err(Error::Hypothesis(format!("{} is not primitive", chi.literal())));
        }
        Self::build(chi, twists)
    }

    /// Like [`ModifiedChar::new`] without the primitivity requirement on chi.
    pub fn new_unchecked(chi: DirichletChar, twists: Vec<(Poly, Phase)>) -> Result<ModifiedChar> {
        Self::build(chi, twists)
    }

    fn build(chi: DirichletChar, mut twists: Vec<(Poly, Phase)>) -> Result<ModifiedChar> {
        let f = chi.field().clone();
        let fz = factor(&f, chi.modulus())?;
        twists.sort_by(|a, b| lex_cmp(&f, &a.0, &b.0));
        let primes: Vec<&Poly> = fz.primes().collect();
        let mut sorted_primes = primes.clone();
        sorted_primes.sort_by(|a, b| lex_cmp(&f, a, b));
        let keys: Vec<&Poly> = twists.iter().map(|(p, _)| p).collect();
        if keys != sorted_primes {
            return Err(Error::InvalidArgument("twist values must be given exactly at the prime divisors of Q".into()));
        }
        Ok(ModifiedChar { chi, factorization: fz, twists })
    }

    /// All twist values equal to 1.
    pub fn untwisted(chi: DirichletChar) -> Result<ModifiedChar> {
        let fz = factor(chi.field(), chi.modulus())?;
        let tw = fz.primes().map(|p| (p.clone(), Phase::ONE)).collect();
        ModifiedChar::new(chi, tw)
    }

    pub fn chi(&self) -> &DirichletChar {
        &self.chi
    }
    pub fn field(&self) -> &Arc<Field> {
        self.chi.field()
    }
    pub fn modulus(&self) -> &Poly {
        self.chi.modulus()
    }
    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }
    pub fn twists(&self) -> &[(Poly, Phase)] {
        &self.twists
    }
    pub fn omega(&self) -> usize {
        self.twists.len()
    }
    pub fn twist_at(&self, p: &Poly) -> Option<Phase> {
        self.twists.iter().find(|(x, _)| x == p).map(|(_, v)| *v)
    }
    /// Twist values as exact rotations, when all are rational.
    pub fn rational_twists(&self) -> Option<Vec<RootOfUnity>> {
        self.twists.iter().map(|(_, v)| v.as_rational()).collect()
    }

    pub fn to_multfn(&self) -> MultFn {
        MultFn::character(self.chi.clone())
            .with_prime_values(self.twists.iter().cloned())
            .expect("prime divisors are monic primes")
    }

    /// `modchar{q=..,Q=<poly>,chi=<tuple>,twist={<P>:<a/m>,...}}`.
    pub fn literal(&self) -> String {
        let f = self.field();
        let chi: Vec<String> = self.chi.exponents().iter().map(u64::to_string).collect();
        let tw: Vec<String> = self.twists.iter().map(|(p, v)| format!("{}:{}", f.fmt_poly(p), v)).collect();
        format!("modchar{{q={},Q={},chi=({}),twist={{{}}}}}", f.q(), f.fmt_poly(self.modulus()), chi.join(","), tw.join(","))
    }
}

/// Splits on commas outside (), [] and {}.
pub(crate) fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses a modified-character literal. The field is built from `q` unless `field` is
/// given (its size must then match).
pub fn parse_modchar(text: &str, field: Option<&Arc<Field>>) -> Result<ModifiedChar> {
    let err = |msg: &str| Error::Parse { pos: 0, msg: msg.to_string() };
    let body = text
        .trim()
        .strip_prefix("modchar{")
        .and_then(|x| x.strip_suffix('}'))
        .ok_or_else(|| err("expected modchar{...}"))?;
    let (mut q, mut modulus, mut chi, mut twist) = (None, None, None, None);
    for part in split_top(body) {
        let (k, v) = part.split_once('=').ok_or_else(|| err("expected key=value"))?;
        match k.trim() {
            "q" => q = Some(v.trim().parse::<u32>().map_err(|_| err("bad q"))?),
            "Q" => modulus = Some(v.trim()),
            "chi" => chi = Some(v.trim()),
            "twist" => twist = Some(v.trim()),
            other => return Err(err(&format!("unknown key {other}"))),
        }
    }
    let f = match (field, q) {
        (Some(f), Some(q)) if f.q() != q => return Err(err("q does not match the configured field")),
        (Some(f), _) => f.clone(),
        (None, Some(q)) => FieldConfig::for_q(q)?.build()?,
        (None, None) => return Err(err("missing q")),
    };
    let modulus = parse_poly(&f, modulus.ok_or_else(|| err("missing Q"))?)?;
    let exps = parse_tuple(chi.ok_or_else(|| err("missing chi"))?)?;
    let group = UnitGroup::new(f.clone(), &modulus)?;
    let chi = DirichletChar::new(group, exps)?;
    let tw_body = twist
        .ok_or_else(|| err("missing twist"))?
        .strip_prefix('{')
        .and_then(|x| x.strip_suffix('}'))
        .ok_or_else(|| err("twist must be {P:a/m,...}"))?;
    let mut twists = Vec::new();
    if !tw_body.trim().is_empty() {
        for item in split_top(tw_body) {
            let (p, v) = item.rsplit_once(':').ok_or_else(|| err("twist entries are P:value"))?;
            let p = parse_poly(&f, p.trim())?;
            let v: Phase = v.trim().parse()?;
            twists.push((p, v));
        }
    }
    ModifiedChar::new(chi, twists)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::characters;
    use crate::enumerate::monics_up_to;
    use crate::phase::Value;

    fn example() -> ModifiedChar {
        parse_modchar("modchar{q=2,Q=t^2*(t+1)^2,chi=(0,1),twist={t:1/2,t+1:0/1}}", None).unwrap()
    }

    #[test]
    fn example_value() {
        let m = example();
        let f = m.field().clone();
        let v = m.to_multfn().eval(&parse_poly(&f, "t^2+t").unwrap()).unwrap();
        assert_eq!(v, Value::Unit(Phase::MINUS_ONE));
        assert_eq!(parse_modchar(&m.literal(), None).unwrap().literal(), m.literal());
    }

    #[test]
    fn agrees_with_chi_off_q() {
        let m = example();
        let f = m.field().clone();
        let g = m.to_multfn();
        for a in monics_up_to(&f, 6) {
            if f.poly_gcd(&a, m.modulus()).is_one() {
                assert_eq!(g.eval(&a).unwrap(), Value::from(m.chi().eval(&a).unwrap()));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let f = FieldConfig::prime(2).build().unwrap();
        let q = parse_poly(&f, "t^2*(t+1)^2").unwrap();
        let chars = characters(&UnitGroup::new(f.clone(), &q).unwrap());
        let imprimitive = chars[1].clone();
        assert!(ModifiedChar::untwisted(imprimitive).is_err());
        let prim = chars.iter().find(|c| c.is_primitive()).unwrap().clone();
        assert!(ModifiedChar::new(prim, vec![(Poly::t(), Phase::ONE)]).is_err());
    }
}
