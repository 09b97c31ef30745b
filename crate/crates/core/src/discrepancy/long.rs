//! Long sums over M_{<=N}: direct enumeration, and the closed form built from the
//! partial character sums A_m and the divisor sums s_N over rad(D) | Q.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::chars::{DirichletChar, UnitGroup};
use crate::cyclotomic::{Cyc, CycRing};
use crate::enumerate::{monic_count, monics_in_range, monics_up_to};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::multfunc::{MultFn, ModifiedChar};
use crate::numeric::{chunked_sum, ls_slope, tree_sum};
use crate::phase::{Phase, RootOfUnity};
use crate::poly::Poly;
use crate::sieve::MonicSieve;

/// Cap on the number of monics the literal enumerations visit.
pub const BRUTE_BUDGET: u64 = 1 << 24;

/// Coefficient arithmetic shared by the exact and floating-point recurrences.
pub trait Scalars {
    type T: Clone + PartialEq;
    fn zero(&self) -> Self::T;
    fn one(&self) -> Self::T;
    fn add(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn neg(&self, a: &Self::T) -> Self::T;
    fn to_complex(&self, a: &Self::T) -> Complex64;
}

/// Binary64 complex arithmetic.
pub struct Float;

impl Scalars for Float {
    type T = Complex64;
    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn to_complex(&self, a: &Complex64) -> Complex64 {
        *a
    }
}

/// The partial sums A_m = sum over A in M_{<=m} of chi(A), m < deg Q, of a nonprincipal chi.
#[derive(Clone, Debug)]
pub struct LPolynomial {
    chi: DirichletChar,
    /// counts[n][k] = #{A in M_n : chi(A) = e(k/E)}
    counts: Vec<Vec<u64>>,
}

impl LPolynomial {
    pub fn new(chi: &DirichletChar) -> Result<LPolynomial> {
        if chi.is_principal() {
            return Err(Error::Hypothesis("the L-polynomial needs a nonprincipal character".into()));
        }
        let f = chi.field();
        let dq = chi.modulus().d();
        let e = chi.denominator() as usize;
        let mut counts = vec![vec![0u64; e]; dq];
        for a in monics_up_to(f, dq.saturating_sub(1)) {
            if let Some(v) = chi.eval_code(chi.group().ring().encode(&a)) {
                counts[a.d()][v as usize] += 1;
            }
        }
        Ok(LPolynomial { chi: chi.clone(), counts })
    }

    pub fn chi(&self) -> &DirichletChar {
        &self.chi
    }
    pub fn deg_modulus(&self) -> usize {
        self.counts.len()
    }

    fn counts_to_complex(&self, c: &[u64]) -> Complex64 {
        let e = self.chi.denominator();
        c.iter().enumerate().map(|(k, &n)| RootOfUnity::new(k as i64, e).to_complex() * n as f64).sum()
    }

    fn counts_to_cyc(&self, ring: &CycRing, c: &[u64]) -> Cyc {
        let step = ring.order() / self.chi.denominator();
        let mut out = ring.zero();
        for (k, &n) in c.iter().enumerate() {
            if n > 0 {
                ring.add_root(&mut out, k as u64 * step, n as i128);
            }
        }
        out
    }

    fn cumulative(&self) -> Vec<Vec<u64>> {
        let mut acc = vec![0u64; self.chi.denominator() as usize];
        self.counts
            .iter()
            .map(|row| {
                acc.iter_mut().zip(row).for_each(|(a, b)| *a += b);
                acc.clone()
            })
            .collect()
    }

    /// [z^n] L(z, chi) = sum over M_n of chi, n < deg Q.
    pub fn l_coeffs(&self) -> Vec<Complex64> {
        self.counts.iter().map(|c| self.counts_to_complex(c)).collect()
    }

    /// A_0, ..., A_{deg Q - 1}.
    pub fn partial_sums(&self) -> Vec<Complex64> {
        self.cumulative().iter().map(|c| self.counts_to_complex(c)).collect()
    }

    /// L-coefficients in Z[zeta_L]; the ring order must be a multiple of E.
    pub fn l_coeffs_exact(&self, ring: &CycRing) -> Vec<Cyc> {
        self.counts.iter().map(|c| self.counts_to_cyc(ring, c)).collect()
    }

    pub fn partial_sums_exact(&self, ring: &CycRing) -> Vec<Cyc> {
        self.cumulative().iter().map(|c| self.counts_to_cyc(ring, c)).collect()
    }

    /// Remainder of the synthetic division of L(z, chi) by 1 - z, that is L(1, chi).
    pub fn division_remainder(&self) -> Complex64 {
        self.l_coeffs().iter().sum()
    }

    pub fn is_even(&self) -> bool {
        self.chi.is_even()
    }

    /// The numerator of the generating function of the long sums: L(z, chi)/(1 - z) when chi is
    /// even (a polynomial with coefficients A_m), L(z, chi) when chi is odd.
    pub fn numerator(&self) -> Vec<Complex64> {
        if self.is_even() {
            let mut a = self.partial_sums();
            a.pop();
            a
        } else {
            self.l_coeffs()
        }
    }
}

pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// s_N = sum over rad(D) | Q, deg D = N of f(D), from prod over P | Q of (1 - f(P) z^{deg P})^{-1}.
#[derive(Clone, Debug)]
pub struct DivisorSumSeq {
    /// (deg P, f(P)) for the primes dividing Q
    primes: Vec<(usize, Phase)>,
}

impl DivisorSumSeq {
    pub fn new(f: &ModifiedChar) -> DivisorSumSeq {
        DivisorSumSeq { primes: f.twists().iter().map(|(p, v)| (p.d(), *v)).collect() }
    }

    pub fn from_primes(primes: Vec<(usize, Phase)>) -> DivisorSumSeq {
        DivisorSumSeq { primes }
    }

    pub fn primes(&self) -> &[(usize, Phase)] {
        &self.primes
    }

    /// Degree of the characteristic polynomial, deg rad(Q).
    pub fn order(&self) -> usize {
        self.primes.iter().map(|p| p.0).sum()
    }

    /// Common denominator of the prime values, when all are rational.
    pub fn denominator(&self) -> Option<u64> {
        self.primes.iter().try_fold(1u64, |l, (_, v)| Some(l.lcm(&v.as_rational()?.den())))
    }

    fn char_poly_with<R: Scalars>(&self, ring: &R, value: impl Fn(&Phase) -> R::T) -> Vec<R::T> {
        let mut c = vec![ring.one()];
        for (d, v) in &self.primes {
            let mut next = vec![ring.zero(); c.len() + d];
            let mv = ring.neg(&value(v));
            for (i, x) in c.iter().enumerate() {
                next[i] = ring.add(&next[i], x);
                next[i + d] = ring.add(&next[i + d], &ring.mul(x, &mv));
            }
            c = next;
        }
        c
    }

    /// Coefficients c_0 = 1, c_1, ..., of prod (1 - f(P) z^{deg P}).
    pub fn char_poly(&self) -> Vec<Complex64> {
        self.char_poly_with(&Float, |v| v.to_complex())
    }

    pub fn char_poly_exact(&self, ring: &Arc<CycRing>) -> Option<Vec<Cyc>> {
        let l = ring.order();
        if self.primes.iter().any(|(_, v)| v.as_rational().is_none_or(|r| !l.is_multiple_of(r.den()))) {
            return None;
        }
        Some(self.char_poly_with(ring, |v| {
            let r = v.as_rational().expect("checked");
            ring.root(r.num() * (l / r.den()))
        }))
    }

    /// s_0, ..., s_n from the recurrence sum_j c_j s_{N-j} = 0 (N > 0).
    pub fn terms(&self, n: usize) -> Vec<Complex64> {
        let c = self.char_poly();
        let mut s: Vec<Complex64> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if k == 0 {
                s.push(Complex64::new(1.0, 0.0));
                continue;
            }
            let v: Complex64 = (1..c.len().min(k + 1)).map(|j| c[j] * s[k - j]).sum();
            s.push(-v);
        }
        s
    }

    /// s_0, ..., s_n by enumerating the exponent vectors of D.
    pub fn brute_terms(&self, n: usize) -> Vec<Complex64> {
        let mut s = vec![Complex64::new(0.0, 0.0); n + 1];
        fn rec(primes: &[(usize, Phase)], deg: usize, val: Complex64, n: usize, s: &mut [Complex64]) {
            match primes.split_first() {
                None => s[deg] += val,
                Some(((d, v), rest)) => {
                    let (mut dd, mut vv) = (deg, val);
                    while dd <= n {
                        rec(rest, dd, vv, n, s);
                        dd += d;
                        vv *= v.to_complex();
                    }
                }
            }
        }
        rec(&self.primes, 0, Complex64::new(1.0, 0.0), n, &mut s);
        s
    }
}

/// sum over G in M_{<=n} of f(G), enumerating M_{<=n} through the sieve tables.
pub fn long_sum_brute(f: &MultFn, n: i64) -> Result<Complex64> {
    if n < 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(*long_sums_brute(f, n as usize)?.last().expect("n + 1 prefixes"))
}

/// Every prefix sum_{G in M_{<=N}} f(G), N = 0..=n, from the sieve tables.
pub fn long_sums_brute(f: &MultFn, n: usize) -> Result<Vec<Complex64>> {
    let total: u64 = (0..=n).map(|d| monic_count(f.field().q(), d)).sum::<Result<u64>>()?;
    if total > BRUTE_BUDGET {
        return Err(Error::BudgetExceeded { needed: total as u128, budget: BRUTE_BUDGET as u128 });
    }
    let sieve = MonicSieve::new(f.field().clone(), n)?;
    let mut acc = Complex64::new(0.0, 0.0);
    Ok(f.degree_tables(&sieve)
        .iter()
        .map(|row| {
            acc += tree_sum(row);
            acc
        })
        .collect())
}

/// sum over G in M_{<=n} of f(G) with every value computed by f.eval (factoring each G).
pub fn long_sum_literal(f: &MultFn, n: usize) -> Result<Complex64> {
    let fld = f.field();
    let mut total = Complex64::new(0.0, 0.0);
    let mut visited = 0u64;
    for d in 0..=n {
        let count = monic_count(fld.q(), d)?;
        visited += count;
        if visited > BRUTE_BUDGET {
            return Err(Error::BudgetExceeded { needed: visited as u128, budget: BRUTE_BUDGET as u128 });
        }
        total += chunked_sum(count, |a, b| {
            monics_in_range(fld, d, a, b).map(|g| f.eval_complex(&g).expect("monic input")).sum()
        });
    }
    Ok(total)
}

/// Streams S_N = sum over M_{<=N} of f for N = 0, 1, 2, ... as
/// S_N = sum_{m < deg Q} A_m s_{N-m} + A_{deg Q - 1} sum_{n <= N - deg Q} s_n.
///
/// The tail term vanishes exactly when chi is even.
pub struct LongSumStream<R: Scalars> {
    ring: R,
    a: Vec<R::T>,
    c: Vec<R::T>,
    /// s_{N-degQ+1}, ..., s_N
    window: VecDeque<R::T>,
    prefix: R::T,
    n: u64,
}

impl<R: Scalars> LongSumStream<R> {
    fn with(ring: R, a: Vec<R::T>, c: Vec<R::T>) -> Self {
        let prefix = ring.zero();
        LongSumStream { ring, a, c, window: VecDeque::new(), prefix, n: 0 }
    }

    /// Index of the next term.
    pub fn position(&self) -> u64 {
        self.n
    }

    /// (window, prefix) determines every later term; the prefix only matters when
    /// A_{deg Q - 1} is nonzero.
    pub fn state(&self) -> (Vec<R::T>, R::T) {
        let tail = self.a.last().is_some_and(|x| *x != self.ring.zero());
        let prefix = if tail { self.prefix.clone() } else { self.ring.zero() };
        (self.window.iter().cloned().collect(), prefix)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
}

impl<R: Scalars> Iterator for LongSumStream<R> {
    type Item = R::T;
    fn next(&mut self) -> Option<R::T> {
        let r = &self.ring;
        let dq = self.a.len();
        let s = if self.n == 0 {
            r.one()
        } else {
            let mut acc = r.zero();
            for (j, cj) in self.c.iter().enumerate().skip(1) {
                if j > self.window.len() {
                    break;
                }
                acc = r.add(&acc, &r.mul(cj, &self.window[self.window.len() - j]));
            }
            r.neg(&acc)
        };
        if self.window.len() == dq {
            let old = self.window.pop_front().expect("nonempty");
            self.prefix = r.add(&self.prefix, &old);
        }
        self.window.push_back(s);
        let mut total = r.mul(&self.a[dq - 1], &self.prefix);
        for (m, s) in self.window.iter().rev().enumerate() {
            total = r.add(&total, &r.mul(&self.a[m], s));
        }
        self.n += 1;
        Some(total)
    }
}

fn check_nonprincipal(f: &ModifiedChar) -> Result<()> {
    if f.chi().is_principal() {
        return Err(Error::Hypothesis("the closed form needs a nonprincipal character".into()));
    }
    Ok(())
}

/// Common denominator of chi and the twist values, when all twists are rational.
pub fn exact_order(f: &ModifiedChar) -> Option<u64> {
    DivisorSumSeq::new(f).denominator().map(|l| l.lcm(&f.chi().denominator()))
}

pub fn exact_stream(f: &ModifiedChar) -> Result<Option<LongSumStream<Arc<CycRing>>>> {
    check_nonprincipal(f)?;
    let Some(l) = exact_order(f) else { return Ok(None) };
    let ring = CycRing::new(l);
    let lp = LPolynomial::new(f.chi())?;
    let a = lp.partial_sums_exact(&ring);
    let c = DivisorSumSeq::new(f).char_poly_exact(&ring).expect("rational twists");
    Ok(Some(LongSumStream::with(ring, a, c)))
}

pub fn float_stream(f: &ModifiedChar) -> Result<LongSumStream<Float>> {
    check_nonprincipal(f)?;
    let lp = LPolynomial::new(f.chi())?;
    Ok(LongSumStream::with(Float, lp.partial_sums(), DivisorSumSeq::new(f).char_poly()))
}

impl Scalars for Arc<CycRing> {
    type T = Cyc;
    fn zero(&self) -> Cyc {
        CycRing::zero(self)
    }
    fn one(&self) -> Cyc {
        CycRing::one(self)
    }
    fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        CycRing::mul(self, a, b)
    }
    fn neg(&self, a: &Cyc) -> Cyc {
        CycRing::neg(self, a)
    }
    fn to_complex(&self, a: &Cyc) -> Complex64 {
        CycRing::to_complex(self, a)
    }
}

/// S_0, ..., S_n by the closed form, exactly when every twist value is rational.
pub fn long_sums_closed(f: &ModifiedChar, n: usize) -> Result<Vec<Complex64>> {
    if let Some(st) = exact_stream(f)? {
        let ring = st.ring().clone();
        return Ok(st.take(n + 1).map(|x| ring.to_complex(&x)).collect());
    }
    Ok(float_stream(f)?.take(n + 1).collect())
}

/// sum over G in M_{<=n} of f(G) by the closed form; 0 for n < 0.
pub fn long_sum_closed(f: &ModifiedChar, n: i64) -> Result<Complex64> {
    check_nonprincipal(f)?;
    if n < 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(*long_sums_closed(f, n as usize)?.last().expect("n + 1 terms"))
}

#[derive(Clone, Debug, Serialize)]
pub struct LongMax {
    pub n_max: u64,
    pub max: f64,
    pub argmax: u64,
    /// Set when the exact recurrence state was seen to repeat with this period, so the
    /// maximum over the whole range is attained within one period.
    pub period: Option<u64>,
}

/// Period candidate for the divisor sums: every root mu of the characteristic polynomial
/// satisfies mu^T = 1.
fn period_candidate(f: &ModifiedChar) -> Option<u64> {
    f.twists().iter().try_fold(1u64, |l, (p, v)| Some(l.lcm(&(p.d() as u64 * v.as_rational()?.den()))))
}

/// max over N <= n_max of |S_N|. With rational twists the sums are computed exactly and the
/// scan stops once the recurrence state provably cycles.
pub fn long_sum_max(f: &ModifiedChar, n_max: u64) -> Result<LongMax> {
    let mut best = (0.0f64, 0u64);
    let mut record = |n: u64, z: Complex64| {
        if z.norm() > best.0 {
            best = (z.norm(), n);
        }
    };
    if let Some(mut st) = exact_stream(f)? {
        let ring = st.ring().clone();
        let start = f.modulus().d() as u64 + DivisorSumSeq::new(f).order() as u64;
        let period = period_candidate(f).filter(|t| start + t <= n_max);
        let mut snapshot = None;
        while st.position() <= n_max {
            let pos = st.position();
            if let Some(t) = period {
                if pos == start {
                    snapshot = Some(st.state());
                } else if pos == start + t {
                    if snapshot.as_ref() == Some(&st.state()) {
                        return Ok(LongMax { n_max, max: best.0, argmax: best.1, period: Some(t) });
                    }
                    snapshot = None;
                }
            }
            let v = st.next().expect("infinite stream");
            record(pos, ring.to_complex(&v));
        }
    } else {
        for (n, v) in float_stream(f)?.take(n_max as usize + 1).enumerate() {
            record(n as u64, v);
        }
    }
    Ok(LongMax { n_max, max: best.0, argmax: best.1, period: None })
}

#[derive(Clone, Debug, Serialize)]
pub struct SlopeFit {
    pub points: Vec<(u64, f64)>,
    pub slope: f64,
}

/// Least-squares slope of log max_{n <= N} |S_n| against log N over N = 2^lo, ..., 2^hi.
pub fn running_max_slope(f: &ModifiedChar, lo: u32, hi: u32) -> Result<SlopeFit> {
    let n_max = 1u64 << hi;
    let values: Vec<Complex64> = match exact_stream(f)? {
        Some(st) => {
            let ring = st.ring().clone();
            st.take(n_max as usize + 1).map(|x| ring.to_complex(&x)).collect()
        }
        None => float_stream(f)?.take(n_max as usize + 1).collect(),
    };
    let mut run = 0.0f64;
    let mut points = Vec::new();
    for (n, v) in values.iter().enumerate() {
        run = run.max(v.norm());
        if n.is_power_of_two() && n >= 1 << lo {
            points.push((n as u64, run));
        }
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.max(f64::MIN_POSITIVE).ln()).collect();
    Ok(SlopeFit { slope: ls_slope(&xs, &ys), points })
}

/// Every monic G of degree <= max_deg recorded by (deg G, valuations at the primes of Q,
/// discrete log of the Q-free part mod Q), counted. Long sums of all modified characters
/// mod Q then follow by summing over the cells.
pub struct ModulusHistogram {
    field: Arc<Field>,
    modulus: Poly,
    group: Arc<UnitGroup>,
    primes: Vec<Poly>,
    max_deg: usize,
    /// (deg, packed valuations) -> counts per unit discrete log
    cells: BTreeMap<(usize, u64), Vec<u64>>,
}

const VAL_BITS: u32 = 8;

impl ModulusHistogram {
    pub fn new(field: Arc<Field>, modulus: &Poly, max_deg: usize) -> Result<ModulusHistogram> {
        let group = UnitGroup::new(field.clone(), modulus)?;
        let mut primes: Vec<Poly> = crate::factor::factor(&field, modulus)?.primes().cloned().collect();
        primes.sort_by(|a, b| crate::lex::lex_cmp(&field, a, b));
        if primes.len() * VAL_BITS as usize > 64 || max_deg >= 1 << VAL_BITS {
            return Err(Error::InvalidArgument("too many prime divisors for the histogram".into()));
        }
        let order = group.order() as usize;
        let dec = group.decomposition();
        let radix_mul = |a: u32, b: u32| -> u32 {
            let (mut a, mut b) = (a as u64, b as u64);
            let (mut out, mut scale) = (0u64, 1u64);
            for &o in &dec.orders {
                out += ((a % o + b % o) % o) * scale;
                scale *= o;
                a /= o;
                b /= o;
            }
            out as u32
        };
        let table: Vec<u32> = if order * order <= 1 << 24 {
            (0..order * order).map(|i| radix_mul((i / order) as u32, (i % order) as u32)).collect()
        } else {
            Vec::new()
        };
        let mul = |a: u32, b: u32| -> u32 {
            if table.is_empty() {
                radix_mul(a, b)
            } else {
                table[a as usize * order + b as usize]
            }
        };
        let sieve = MonicSieve::new(field.clone(), max_deg)?;
        let ring = group.ring();
        // per sieve prime: index among the primes of Q, or its discrete log mod Q
        let prime_info: Vec<std::result::Result<usize, u32>> = sieve
            .primes()
            .iter()
            .map(|p| match primes.iter().position(|x| x == p) {
                Some(i) => Ok(i),
                None => Err(group.dlog_code(ring.encode(p)).expect("coprime to Q")),
            })
            .collect();
        let mut vals: Vec<Vec<u64>> = vec![vec![0]];
        let mut logs: Vec<Vec<u32>> = vec![vec![0]];
        let mut cells: BTreeMap<(usize, u64), Vec<u64>> = BTreeMap::new();
        cells.entry((0, 0)).or_insert_with(|| vec![0; order])[0] += 1;
        for d in 1..=max_deg {
            let split = sieve.split(d);
            let mut vrow = Vec::with_capacity(split.len());
            let mut lrow = Vec::with_capacity(split.len());
            for &(pid, cof) in split {
                let e = sieve.prime_deg(pid as usize);
                let (v0, l0) = (vals[d - e][cof as usize], logs[d - e][cof as usize]);
                let (v, l) = match prime_info[pid as usize] {
                    Ok(i) => (v0 + (1 << (VAL_BITS * i as u32)), l0),
                    Err(lp) => (v0, mul(l0, lp)),
                };
                vrow.push(v);
                lrow.push(l);
                cells.entry((d, v)).or_insert_with(|| vec![0; order])[l as usize] += 1;
            }
            vals.push(vrow);
            logs.push(lrow);
        }
        Ok(ModulusHistogram { field, modulus: modulus.clone(), group, primes, max_deg, cells })
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }
    pub fn max_deg(&self) -> usize {
        self.max_deg
    }
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Per cell, sum of chi over the recorded discrete logs.
    pub fn character_weights(&self, chi: &DirichletChar) -> Result<Vec<((usize, u64), Complex64)>> {
        if chi.modulus() != &self.modulus || **chi.field() != *self.field {
            return Err(Error::InvalidArgument("character modulus differs from the histogram modulus".into()));
        }
        let den = chi.denominator();
        let vals: Vec<Complex64> =
            (0..self.group.order() as u32).map(|l| RootOfUnity::new(chi.eval_dlog(l) as i64, den).to_complex()).collect();
        Ok(self
            .cells
            .iter()
            .map(|(k, counts)| (*k, counts.iter().zip(&vals).map(|(&c, v)| v * c as f64).sum()))
            .collect())
    }

    /// S_0, ..., S_max_deg for the modified character with the given twist values (ordered
    /// like the primes of Q in lexicographic order), from precomputed character weights.
    pub fn long_sums(&self, weights: &[((usize, u64), Complex64)], twists: &[Complex64]) -> Vec<Complex64> {
        let mask = (1u64 << VAL_BITS) - 1;
        let mut per_deg = vec![Complex64::new(0.0, 0.0); self.max_deg + 1];
        for ((d, v), w) in weights {
            let mut t = *w;
            for (i, z) in twists.iter().enumerate() {
                let e = (v >> (VAL_BITS * i as u32)) & mask;
                if e > 0 {
                    t *= z.powu(e as u32);
                }
            }
            per_deg[*d] += t;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        per_deg
            .iter()
            .map(|x| {
                acc += x;
                acc
            })
            .collect()
    }

    pub fn primes(&self) -> &[Poly] {
        &self.primes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::characters;
    use crate::field::FieldConfig;
    use crate::literal::parse_poly;
    use crate::multfunc::parse_modchar;

    fn example(tw: &str) -> ModifiedChar {
        parse_modchar(&format!("modchar{{q=2,Q=t^2*(t+1)^2,chi=(0,1),twist={{{tw}}}}}"), None).unwrap()
    }

    #[test]
    fn small_values() {
        let m = example("t:1/2,t+1:0/1");
        let g = m.to_multfn();
        assert!((long_sum_brute(&g, 0).unwrap() - 1.0).norm() < 1e-12);
        assert!((long_sum_brute(&g, 1).unwrap() - 1.0).norm() < 1e-12);
        assert_eq!(long_sum_brute(&g, -1).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(long_sum_closed(&m, -3).unwrap(), Complex64::new(0.0, 0.0));
        assert!((long_sum_closed(&m, 0).unwrap() - 1.0).norm() < 1e-12);
        let closed = long_sums_closed(&m, 10).unwrap();
        let brute = long_sums_brute(&g, 10).unwrap();
        for (a, b) in closed.iter().zip(&brute) {
            assert!((a - b).norm() < 1e-9);
        }
        assert!((long_sum_literal(&g, 7).unwrap() - brute[7]).norm() < 1e-9);
    }

    #[test]
    fn divisor_sums() {
        let m = example("t:1/3,t+1:1/2");
        let s = DivisorSumSeq::new(&m);
        let (a, b) = (s.terms(12), s.brute_terms(12));
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-9);
        }
        let c = s.char_poly();
        let long = s.terms(200);
        for n in 1..=200 {
            let r: Complex64 = (0..c.len()).filter(|&j| j <= n).map(|j| c[j] * long[n - j]).sum();
            assert!(r.norm() < 1e-9);
        }
    }

    #[test]
    fn odd_character_tail() {
        // q = 3, Q = t, odd quadratic chi, f(t) = 1: the sums are N + 1
        let f3 = FieldConfig::prime(3).build().unwrap();
        let chi = characters(&crate::chars::UnitGroup::new(f3.clone(), &Poly::t()).unwrap())[1].clone();
        let m = ModifiedChar::new(chi, vec![(Poly::t(), Phase::ONE)]).unwrap();
        let closed = long_sums_closed(&m, 8).unwrap();
        let brute = long_sums_brute(&m.to_multfn(), 8).unwrap();
        for (n, (a, b)) in closed.iter().zip(&brute).enumerate() {
            assert!((a - b).norm() < 1e-9);
            assert!((a.re - (n as f64 + 1.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn histogram_matches_brute() {
        let f3 = FieldConfig::prime(3).build().unwrap();
        let q = parse_poly(&f3, "t^2*(t+1)").unwrap();
        let h = ModulusHistogram::new(f3.clone(), &q, 7).unwrap();
        for chi in characters(h.group()).into_iter().filter(|c| c.is_primitive()) {
            let w = h.character_weights(&chi).unwrap();
            let tw = [Phase::rational(1, 6), Phase::rational(2, 3)];
            let m = ModifiedChar::new(chi, h.primes().iter().cloned().zip(tw).collect()).unwrap();
            let sums = h.long_sums(&w, &tw.map(|p| p.to_complex()));
            let brute = long_sums_brute(&m.to_multfn(), 7).unwrap();
            for (a, b) in sums.iter().zip(&brute) {
                assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn cycle_detection() {
        let m = example("t:1/2,t+1:0/1");
        let r = long_sum_max(&m, 1_000_000).unwrap();
        assert!(r.period.is_some());
        let direct = long_sums_closed(&m, 200).unwrap().iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!((r.max - direct).abs() < 1e-9);
    }

    #[test]
    fn linear_growth() {
        let fit = running_max_slope(&example("t:0/1,t+1:0/1"), 10, 14).unwrap();
        assert!((fit.slope - 1.0).abs() < 0.15, "{}", fit.slope);
    }
}
