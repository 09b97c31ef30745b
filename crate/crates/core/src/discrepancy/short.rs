//! Short-interval sums over I_H(G0) = {G monic : deg(G - G0) < H}, the mean square T,
//! and the prime-power formula for sums over M_{<H}.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::phi;
use crate::chars::{ArchimedeanTwist, DirichletChar, ShortIntervalChar};
use crate::enumerate::{monic_count, monics_up_to};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::Field;
use crate::lex::{lex_unrank, short_interval};
use crate::multfunc::{Direction, ModifiedChar, MultFn};
use crate::numeric::{sum_terms, tree_sum};
use crate::phase::Phase;
use crate::poly::Poly;
use crate::sieve::MonicSieve;

/// sum over G in I_H(G0) of f(G), each value from f.eval.
pub fn short_sum(f: &MultFn, g0: &Poly, h: usize) -> Result<Complex64> {
    if !g0.is_monic() {
        return Err(Error::InvalidArgument("G0 must be monic".into()));
    }
    let fld = f.field();
    let n = (fld.q() as u64).checked_pow(h as u32).ok_or_else(|| Error::Overflow(format!("q^{h}")))?;
    let terms = short_interval(fld, g0, h)?.map(|g| f.eval_complex(&g).expect("monic"));
    Ok(sum_terms(terms, n as usize))
}

/// Values of f on M_d for d <= max_deg; the intervals I_H(G0), G0 in M_N, are the aligned
/// runs of q^H consecutive offsets in row N.
pub struct ShortScanner {
    field: Arc<Field>,
    tables: Vec<Vec<Complex64>>,
}

impl ShortScanner {
    pub fn new(f: &MultFn, max_deg: usize) -> Result<ShortScanner> {
        let sieve = MonicSieve::new(f.field().clone(), max_deg)?;
        Ok(ShortScanner { field: f.field().clone(), tables: f.degree_tables(&sieve) })
    }

    pub fn max_deg(&self) -> usize {
        self.tables.len() - 1
    }

    fn check(&self, h: usize, n: usize) -> Result<()> {
        if n > self.max_deg() {
            return Err(Error::InvalidArgument(format!("degree {n} beyond the tabulated range")));
        }
        if h > n {
            return Err(Error::InvalidArgument(format!("window H = {h} exceeds N = {n}")));
        }
        Ok(())
    }

    /// Block sums in order of G0 (offset of the member divisible by t^H, over q^H).
    pub fn block_sums(&self, h: usize, n: usize) -> Result<Vec<Complex64>> {
        self.check(h, n)?;
        let len = (self.field.q() as usize).pow(h as u32);
        Ok(self.tables[n].par_chunks(len).map(tree_sum).collect())
    }

    /// (max |block sum|, offset of the maximising block's first member).
    pub fn sup(&self, h: usize, n: usize) -> Result<(f64, u64)> {
        let len = (self.field.q() as u64).pow(h as u32);
        let sums = self.block_sums(h, n)?;
        let (i, m) = sums.iter().enumerate().fold((0, 0.0f64), |acc, (i, z)| if z.norm() > acc.1 { (i, z.norm()) } else { acc });
        Ok((m, i as u64 * len))
    }

    /// T = q^{H-N} sum over blocks |block sum|^2 = q^{-N} sum over G0 in M_N of |sum over I_H(G0)|^2.
    pub fn mean_square(&self, h: usize, n: usize) -> Result<f64> {
        let sums = self.block_sums(h, n)?;
        let s: f64 = sums.iter().map(|z| z.norm_sqr()).sum();
        Ok(s * (self.field.q() as f64).powi(h as i32 - n as i32))
    }

    /// sup over H <= N <= n_max of the block maxima, per H <= h_max, with the running envelope.
    pub fn envelope(&self, h_max: usize, n_max: usize) -> Result<Vec<EnvelopeRow>> {
        let mut env = 0.0f64;
        let mut rows = Vec::new();
        for h in 0..=h_max {
            let mut sup = 0.0f64;
            for n in h.max(1)..=n_max {
                sup = sup.max(self.sup(h, n)?.0);
            }
            env = env.max(sup);
            rows.push(EnvelopeRow { h, sup, envelope: env });
        }
        Ok(rows)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeRow {
    pub h: usize,
    pub sup: f64,
    pub envelope: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShortScan {
    pub h: usize,
    pub n: usize,
    pub max: f64,
    /// G0 attaining the maximum, as a polynomial literal
    pub argmax: String,
    pub exhaustive: bool,
    pub intervals: u64,
}

/// max over G0 in M_N of |short_sum|: exhaustive through the sieve when q^N fits the budget,
/// otherwise over budget / q^H intervals sampled with the given seed.
pub fn short_scan(f: &MultFn, h: usize, n: usize, budget: u64, seed: u64) -> Result<ShortScan> {
    if h > n {
        return Err(Error::InvalidArgument(format!("window H = {h} exceeds N = {n}")));
    }
    let fld = f.field();
    let size = monic_count(fld.q(), n)?;
    let qh = monic_count(fld.q(), h)?;
    let base = crate::lex::monic_base(fld, n)?;
    if size <= budget {
        let sc = ShortScanner::new(f, n)?;
        let (max, off) = sc.sup(h, n)?;
        let g0 = lex_unrank(fld, base + off);
        return Ok(ShortScan { h, n, max, argmax: fld.fmt_poly(&g0), exhaustive: true, intervals: size / qh });
    }
    let samples = (budget / qh).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<u64> = (0..samples).map(|_| rng.gen_range(0..size / qh) * qh).collect();
    let sums: Vec<(f64, u64)> = starts
        .par_iter()
        .map(|&off| (short_sum(f, &lex_unrank(fld, base + off), h).expect("valid window").norm(), off))
        .collect();
    let (max, off) = sums.iter().fold((0.0, 0), |acc, &(m, o)| if m > acc.0 { (m, o) } else { acc });
    Ok(ShortScan { h, n, max, argmax: fld.fmt_poly(&lex_unrank(fld, base + off)), exhaustive: false, intervals: samples })
}

/// T for f over (H, N) by exhaustive enumeration of M_N.
pub fn mean_square_t(f: &MultFn, h: usize, n: usize) -> Result<f64> {
    ShortScanner::new(f, n)?.mean_square(h, n)
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBound {
    pub value: f64,
    /// deg of Q / cond(chi)
    pub imprimitive_degree: usize,
    /// N - (H deg Q + 10); negative values mean N is below the regime of the asymptotic bound
    pub slack: i64,
}

/// (phi(Q)/q^{deg Q}) (phi(Q_S)/q^{deg Q_S})^2 prod_{P | Q_S} |1 - f conj(chi*)(P) q^{-deg P}|^{-2}
/// * q^H sum over rad(D) | Q, deg D >= H of q^{-deg D}, with Q_S = Q / cond(chi).
pub fn mean_square_lower_bound(f: &ModifiedChar, h: usize, n: usize) -> Result<LowerBound> {
    let fld = f.field();
    let q = fld.q() as f64;
    let modulus = f.modulus();
    let dq = modulus.d();
    let main = phi(fld.q(), f.factorization()) as f64 / q.powi(dq as i32);
    let chi = f.chi();
    let cond = chi.conductor().clone();
    let qs = fld.poly_div_exact(modulus, &cond).expect("conductor divides Q");
    let star = chi.primitive_part()?;
    let qs_fz = factor(fld, &qs)?;
    let mut local = (phi(fld.q(), &qs_fz) as f64 / q.powi(qs.d() as i32)).powi(2);
    for p in qs_fz.primes() {
        let fp = f.twist_at(p).map_or(Complex64::new(0.0, 0.0), |v| v.to_complex());
        let cp = star.eval(p).map_or(Complex64::new(0.0, 0.0), |r| r.to_complex().conj());
        local /= (1.0 - fp * cp * q.powi(-(p.d() as i32))).norm_sqr();
    }
    // counts r_n of D with rad(D) | Q and deg D = n, n < H
    let mut r = vec![0f64; h];
    if h > 0 {
        r[0] = 1.0;
    }
    for p in f.factorization().primes() {
        let d = p.d();
        for i in d..h {
            r[i] += r[i - d];
        }
    }
    let total: f64 = f.factorization().primes().map(|p| 1.0 / (1.0 - q.powi(-(p.d() as i32)))).product();
    let head: f64 = r.iter().enumerate().map(|(i, c)| c * q.powi(-(i as i32))).sum();
    let tail = (total - head) * q.powi(h as i32);
    Ok(LowerBound { value: main * local * tail, imprimitive_degree: qs.d(), slack: n as i64 - (h * dq + 10) as i64 })
}

/// f with f(P') = chi xi e_theta(P') for primes P' != P and a free unit value at P, where chi
/// is a nonprincipal character mod P^r.
#[derive(Clone, Debug)]
pub struct PrimePowerChar {
    chi: DirichletChar,
    prime: Poly,
    r: u32,
    xi: ShortIntervalChar,
    theta: Phase,
    fp: Phase,
}

impl PrimePowerChar {
    pub fn new(chi: DirichletChar, xi: ShortIntervalChar, theta: Phase, fp: Phase) -> Result<PrimePowerChar> {
        if chi.is_principal() {
            return Err(Error::Hypothesis("chi must be nonprincipal".into()));
        }
        let fz = factor(chi.field(), chi.modulus())?;
        if fz.factors.len() != 1 {
            return Err(Error::Hypothesis("modulus is not a prime power".into()));
        }
        if **xi.group().field() != **chi.field() {
            return Err(Error::InvalidArgument("xi is over a different field".into()));
        }
        let (prime, r) = fz.factors[0].clone();
        Ok(PrimePowerChar { chi, prime, r, xi, theta, fp })
    }

    pub fn prime(&self) -> &Poly {
        &self.prime
    }
    pub fn exponent(&self) -> u32 {
        self.r
    }
    pub fn value_at_prime(&self) -> Phase {
        self.fp
    }

    /// chi xi e_theta(M), zero when P | M.
    pub fn base_value(&self, m: &Poly) -> Complex64 {
        match self.chi.eval(m) {
            None => Complex64::new(0.0, 0.0),
            Some(c) => c.to_complex() * self.xi.eval(m).to_complex() * self.theta.pow(m.d() as i64).to_complex(),
        }
    }

    pub fn to_multfn(&self) -> MultFn {
        let twisted = MultFn::character(self.chi.clone()).twist(&self.xi, ArchimedeanTwist::new(self.theta), Direction::Apply);
        // the twist also multiplies the value at P
        let correction = self.xi.eval(&self.prime).conj();
        let at_p = self.fp.mul(Phase::Rational(correction)).mul(self.theta.pow(self.prime.d() as i64).conj());
        twisted.with_prime_values([(self.prime.clone(), at_p)]).expect("monic prime")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimePowerSum {
    pub h: usize,
    pub formula: [f64; 2],
    pub enumerated: [f64; 2],
}

/// sum over M in M_{<H} of f(M), by the formula
/// sum over M' in M_{< nu + r deg P} of chi xi e_theta(M') sum_{0 <= k < (H - deg M')/deg P} f(P)^k
/// and by enumeration.
pub fn prime_power_short_formula(g: &PrimePowerChar, h: usize) -> Result<PrimePowerSum> {
    let fld = g.chi.field();
    let dp = g.prime.d();
    let cutoff = g.xi.nu() + g.r as usize * dp;
    let fp = g.fp.to_complex();
    let mut formula = Complex64::new(0.0, 0.0);
    for m in monics_up_to(fld, cutoff.saturating_sub(1)) {
        if h <= m.d() {
            continue;
        }
        let k = (h - m.d()).div_ceil(dp);
        let geo: Complex64 = (0..k).map(|i| fp.powu(i as u32)).sum();
        formula += g.base_value(&m) * geo;
    }
    let f = g.to_multfn();
    let enumerated: Complex64 = if h == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        monics_up_to(fld, h - 1).map(|m| f.eval_complex(&m).expect("monic")).sum()
    };
    Ok(PrimePowerSum { h, formula: [formula.re, formula.im], enumerated: [enumerated.re, enumerated.im] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{characters, short_chars, UnitGroup};
    use crate::field::FieldConfig;
    use crate::literal::parse_poly;
    use crate::multfunc::parse_modchar;

    #[test]
    fn short_sum_examples() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        let q = parse_poly(&f2, "t^3+t+1").unwrap();
        let chi = characters(&UnitGroup::new(f2.clone(), &q).unwrap())[3].clone();
        let f = MultFn::character(chi);
        let g0 = parse_poly(&f2, "t^5+t^2").unwrap();
        assert!((short_sum(&f, &g0, 0).unwrap() - f.eval_complex(&g0).unwrap()).norm() < 1e-12);
        assert!(short_sum(&f, &g0, 3).unwrap().norm() < 1e-9);
        assert!(short_sum(&f, &g0, 6).is_err());
        let sc = ShortScanner::new(&f, 6).unwrap();
        let blocks = sc.block_sums(2, 5).unwrap();
        let direct = short_sum(&f, &g0, 2).unwrap();
        // t^5 + t^2 has offset 4, the second block of length 4
        assert!((blocks[1] - direct).norm() < 1e-9);
    }

    #[test]
    fn full_window_is_degree_slice() {
        let m = parse_modchar("modchar{q=2,Q=t^2*(t+1)^2,chi=(0,1),twist={t:0/1,t+1:0/1}}", None).unwrap();
        let f = m.to_multfn();
        let sc = ShortScanner::new(&f, 8).unwrap();
        let long = crate::discrepancy::long_sums_brute(&f, 8).unwrap();
        assert!((sc.block_sums(8, 8).unwrap()[0] - (long[8] - long[7])).norm() < 1e-9);
        assert!((sc.mean_square(0, 8).unwrap() - 1.0).abs() < 1e-12);
        let s = short_scan(&f, 3, 8, 1 << 20, 0).unwrap();
        assert!(s.exhaustive && (s.max - sc.sup(3, 8).unwrap().0).abs() < 1e-12);
        let sampled = short_scan(&f, 3, 8, 64, 7).unwrap();
        assert!(!sampled.exhaustive && sampled.max <= s.max + 1e-12);
    }

    #[test]
    fn lower_bound_closed_form() {
        let m = parse_modchar("modchar{q=2,Q=t^2*(t+1)^2,chi=(0,1),twist={t:0/1,t+1:0/1}}", None).unwrap();
        for h in [4usize, 6, 8] {
            let lb = mean_square_lower_bound(&m, h, h + 10).unwrap();
            assert!((lb.value - (h as f64 + 2.0) / 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn prime_power_examples() {
        let f3 = FieldConfig::prime(3).build().unwrap();
        let chi = characters(&UnitGroup::new(f3.clone(), &Poly::t()).unwrap())[1].clone();
        let xi = ShortIntervalChar::trivial(f3.clone());
        let g = PrimePowerChar::new(chi.clone(), xi.clone(), Phase::ONE, Phase::ONE).unwrap();
        assert_eq!(prime_power_short_formula(&g, 2).unwrap().enumerated[0].round(), 2.0);
        for h in 1..=6 {
            let r = prime_power_short_formula(&g, h).unwrap();
            assert!((r.formula[0] - h as f64).abs() < 1e-9 && (r.enumerated[0] - h as f64).abs() < 1e-9);
        }
        let g = PrimePowerChar::new(chi, xi, Phase::ONE, Phase::MINUS_ONE).unwrap();
        let sums: Vec<f64> = (1..=8).map(|h| prime_power_short_formula(&g, h).unwrap().enumerated[0]).collect();
        for h in 1..6 {
            assert!((sums[h - 1] - sums[h + 1]).abs() < 1e-9);
        }
        let f2 = FieldConfig::prime(2).build().unwrap();
        let q = parse_poly(&f2, "t^3").unwrap();
        let chi = characters(&UnitGroup::new(f2.clone(), &q).unwrap())[1].clone();
        let xi = short_chars(&f2, 2).unwrap()[1].clone();
        let g = PrimePowerChar::new(chi, xi, Phase::rational(1, 5), Phase::rational(1, 3)).unwrap();
        for h in 0..=7 {
            let r = prime_power_short_formula(&g, h).unwrap();
            assert!((r.formula[0] - r.enumerated[0]).abs() < 1e-9 && (r.formula[1] - r.enumerated[1]).abs() < 1e-9);
        }
    }
}
