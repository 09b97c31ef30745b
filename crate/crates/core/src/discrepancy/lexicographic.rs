//! Sums over the lexicographic prefixes {G : <G> < N}, monic or over all of F_q[t].

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclotomic::{Cyc, CycRing};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lex::lex_unrank;
use crate::multfunc::{ModifiedChar, MultFn};
use crate::numeric::sum_terms;
use crate::phase::{Phase, Value};
use crate::poly::Poly;
use crate::sieve::{offset, MonicSieve};

/// Cap on the prefix length of lexicographic scans.
pub const LEX_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LexDomain {
    Monic,
    All,
}

fn check_budget(n: u64) -> Result<()> {
    if n > LEX_BUDGET {
        return Err(Error::BudgetExceeded { needed: n as u128, budget: LEX_BUDGET as u128 });
    }
    Ok(())
}

/// sum over G with <G> < n (monic G only, or all G != 0) of f(G), each value from f.eval.
pub fn lex_sum(f: &MultFn, n: u64, domain: LexDomain) -> Result<Complex64> {
    check_budget(n)?;
    let fld = f.field();
    let terms = (1..n).filter_map(|i| {
        let g = lex_unrank(fld, i);
        (domain == LexDomain::All || g.is_monic()).then(|| f.eval_complex(&g).expect("nonzero"))
    });
    Ok(sum_terms(terms, n as usize))
}

/// Degree and coefficient vector of the polynomial with index i > 0.
fn digits(fld: &Field, mut i: u64, buf: &mut Vec<u32>) {
    let q = fld.q() as u64;
    buf.clear();
    while i > 0 {
        buf.push(fld.elem_of_size((i % q) as u32));
        i /= q;
    }
}

/// Locates f(G) for <G> = i in the sieve tables: (degree, offset of the monic part, leading
/// coefficient), or `None` for i = 0 and for non-monic G when only monics count.
fn locate(fld: &Field, i: u64, domain: LexDomain, buf: &mut Vec<u32>) -> Option<(usize, u64, u32)> {
    if i == 0 {
        return None;
    }
    digits(fld, i, buf);
    let d = buf.len() - 1;
    let c = buf[d];
    if c != 1 {
        if domain == LexDomain::Monic {
            return None;
        }
        let inv = fld.inv(c).expect("nonzero leading coefficient");
        buf.iter_mut().for_each(|x| *x = fld.mul(*x, inv));
    }
    Some((d, offset(fld, buf), c))
}

fn sieve_for(fld: &std::sync::Arc<Field>, n: u64) -> Result<MonicSieve> {
    let top = if n <= 1 { 0 } else { lex_unrank(fld, n - 1).d() };
    MonicSieve::new(fld.clone(), top)
}

/// S_0, ..., S_n with S_k the sum over <G> < k, through the sieve tables.
pub fn lex_prefix_sums(f: &MultFn, n: u64, domain: LexDomain) -> Result<Vec<Complex64>> {
    check_budget(n)?;
    let fld = f.field();
    let sieve = sieve_for(fld, n)?;
    let tables = f.degree_tables(&sieve);
    let mut buf = Vec::new();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(acc);
    for i in 0..n {
        if let Some((d, off, c)) = locate(fld, i, domain, &mut buf) {
            acc += f.constant_value(c).to_complex() * tables[d][off as usize];
        }
        out.push(acc);
    }
    Ok(out)
}

/// Exact prefix sums: for every k <= n, the number of G with <G> < k and f(G) = e(j/L).
pub struct ExactLexPrefix {
    ring: std::sync::Arc<CycRing>,
    counts: Vec<u32>,
}

impl ExactLexPrefix {
    pub fn new(f: &MultFn, n: u64, domain: LexDomain) -> Result<ExactLexPrefix> {
        check_budget(n)?;
        let fld = f.field();
        let sieve = sieve_for(fld, n)?;
        let (l0, tables) =
            f.exact_degree_tables(&sieve).ok_or_else(|| Error::InvalidArgument("exact prefixes need rational values".into()))?;
        let consts: Vec<Option<(u64, u64)>> = (0..fld.q())
            .map(|c| match (c != 0).then(|| f.constant_value(c)) {
                Some(Value::Unit(Phase::Rational(r))) => Some((r.num(), r.den())),
                _ => None,
            })
            .collect();
        let l = consts.iter().flatten().fold(l0, |acc, &(_, den)| acc.lcm(&den));
        let width = l as usize;
        let mut counts = vec![0u32; (n as usize + 1) * width];
        let mut buf = Vec::new();
        for i in 0..n as usize {
            let (prev, next) = counts.split_at_mut((i + 1) * width);
            next[..width].copy_from_slice(&prev[i * width..]);
            if let Some((d, off, c)) = locate(fld, i as u64, domain, &mut buf) {
                let v = tables[d][off as usize];
                let Some((cn, cd)) = consts[c as usize] else { continue };
                if v != u32::MAX {
                    let k = (v as u64 * (l / l0) + cn * (l / cd)) % l;
                    next[k as usize] += 1;
                }
            }
        }
        Ok(ExactLexPrefix { ring: CycRing::new(l), counts })
    }

    pub fn ring(&self) -> &std::sync::Arc<CycRing> {
        &self.ring
    }

    pub fn len(&self) -> u64 {
        (self.counts.len() / self.ring.order() as usize) as u64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// S_k in Z[zeta_L].
    pub fn sum(&self, k: u64) -> Cyc {
        let w = self.ring.order() as usize;
        let mut out = self.ring.zero();
        for (j, &c) in self.counts[k as usize * w..(k as usize + 1) * w].iter().enumerate() {
            if c > 0 {
                self.ring.add_root(&mut out, j as u64, c as i128);
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LexWitness {
    /// always "witness": finite-range evidence, not a proof of unboundedness
    pub label: &'static str,
    pub n_max: u64,
    /// (N, max_{n <= N} |S_n^M|) at every strict increase of the running maximum
    pub records: Vec<(u64, f64)>,
}

/// Running maximum of |S_n^M(f)| for n <= n_max and its record points.
pub fn lex_growth_witness(f: &MultFn, n_max: u64) -> Result<LexWitness> {
    let sums = lex_prefix_sums(f, n_max, LexDomain::Monic)?;
    let mut records = Vec::new();
    let mut best = 0.0f64;
    for (n, s) in sums.iter().enumerate() {
        if s.norm() > best + 1e-9 {
            best = s.norm();
            records.push((n as u64, best));
        }
    }
    Ok(LexWitness { label: "witness", n_max, records })
}

#[derive(Clone, Debug, Serialize)]
pub struct DigitRecursionReport {
    pub r: u32,
    pub tested: usize,
    /// failures with S_X summed over <G> <= X
    pub failures: usize,
    /// (N, M, m) of the first such failure
    pub first_failure: Option<(u64, u64, u32)>,
    /// failures with S_X summed over <G> < X instead; these occur whenever N, M > 0
    pub strict_failures: usize,
}

/// Checks S_{q^m N + M} = f(t)^m S_N + S_M over all of F_q[t] on random triples with
/// M < q^m and q^r | M, N, for f a modified character mod t^r. Exact arithmetic.
/// Here S_X runs over <G> <= X; the strict prefix <G> < X breaks the identity by
/// f(G) at <G> = q^m N, so both readings are counted.
pub fn digit_recursion_check(f: &ModifiedChar, triples: usize, n_max: u64, seed: u64) -> Result<DigitRecursionReport> {
    let fld = f.field();
    let fz = f.factorization();
    if fz.factors.len() != 1 || fz.factors[0].0 != Poly::t() {
        return Err(Error::Hypothesis("modulus must be a power of t".into()));
    }
    let r = fz.factors[0].1;
    let ft = f.twist_at(&Poly::t()).and_then(|v| v.as_rational()).ok_or_else(|| {
        Error::InvalidArgument("the value at t must be a rational rotation".into())
    })?;
    let q = fld.q() as u64;
    let qr = q.pow(r);
    if qr > n_max {
        return Err(Error::InvalidArgument("n_max below q^r".into()));
    }
    let prefix = ExactLexPrefix::new(&f.to_multfn(), n_max + 1, LexDomain::All)?;
    let ring = prefix.ring().clone();
    let step = ring.order() / ft.den();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m_top = 0u32;
    while q.pow(m_top + 1) * qr <= n_max {
        m_top += 1;
    }
    let mut report = DigitRecursionReport { r, tested: 0, failures: 0, first_failure: None, strict_failures: 0 };
    let holds = |x: u64, n: u64, mm: u64, m: u32| {
        let mut rhs = ring.mul_root(&prefix.sum(n), ft.num() * step * m as u64);
        ring.add_assign(&mut rhs, &prefix.sum(mm));
        prefix.sum(x) == rhs
    };
    for _ in 0..triples {
        let m = rng.gen_range(0..=m_top);
        let qm = q.pow(m);
        let big_m = if m >= r { rng.gen_range(0..qm / qr) * qr } else { 0 };
        let a_max = (n_max - big_m) / (qm * qr);
        let big_n = rng.gen_range(0..=a_max) * qr;
        let x = qm * big_n + big_m;
        report.tested += 1;
        if !holds(x + 1, big_n + 1, big_m + 1, m) {
            report.failures += 1;
            report.first_failure.get_or_insert((big_n, big_m, m));
        }
        if !holds(x, big_n, big_m, m) {
            report.strict_failures += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{characters, UnitGroup};
    use crate::field::FieldConfig;
    use crate::literal::parse_poly;

    #[test]
    fn prefix_examples() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        let lam = MultFn::liouville(f2.clone());
        assert!((lex_sum(&lam, 2, LexDomain::Monic).unwrap() - 1.0).norm() < 1e-12);
        let sums = lex_prefix_sums(&lam, 64, LexDomain::Monic).unwrap();
        for k in [0u64, 1, 2, 5, 17, 40, 64] {
            assert!((sums[k as usize] - lex_sum(&lam, k, LexDomain::Monic).unwrap()).norm() < 1e-9);
        }
        let long = crate::discrepancy::long_sums_brute(&lam, 4).unwrap();
        assert!((sums[32] - long[4]).norm() < 1e-9);
    }

    #[test]
    fn all_polynomials_and_c_q() {
        let f3 = FieldConfig::prime(3).build().unwrap();
        let q = parse_poly(&f3, "t^2+1").unwrap();
        let chi = characters(&UnitGroup::new(f3.clone(), &q).unwrap())[1].clone();
        let f = MultFn::character(chi);
        let all = lex_prefix_sums(&f, 243, LexDomain::All).unwrap();
        let monic = lex_prefix_sums(&f, 243, LexDomain::Monic).unwrap();
        for k in [1u64, 2, 7, 50, 100, 243] {
            assert!((all[k as usize] - lex_sum(&f, k, LexDomain::All).unwrap()).norm() < 1e-9);
        }
        for n in 0..=5u32 {
            let k = 3usize.pow(n);
            assert!((all[k] - monic[k] * f.c_q() as f64).norm() < 1e-9);
        }
    }

    #[test]
    fn digit_recursion() {
        for (q, r) in [(2u32, 2u32), (2, 3), (3, 1), (3, 2)] {
            let fld = FieldConfig::prime(q).build().unwrap();
            let m = fld.poly_pow(&Poly::t(), r as u64);
            let chi = characters(&UnitGroup::new(fld.clone(), &m).unwrap()).into_iter().find(|c| c.is_primitive()).unwrap();
            let f = ModifiedChar::new(chi, vec![(Poly::t(), Phase::rational(1, 6))]).unwrap();
            let rep = digit_recursion_check(&f, 200, 1 << 12, 1).unwrap();
            assert_eq!(rep.failures, 0, "q={q} r={r} {:?}", rep.first_failure);
            assert!(rep.strict_failures > 0);
        }
    }

    #[test]
    fn witness_records() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        let w = lex_growth_witness(&MultFn::one(f2), 1 << 10).unwrap();
        assert_eq!(w.records.len(), 1023);
    }
}
