//! The acceptance checks, shared by the test suite and `ffdisc selftest`.
//!
//! `Profile::Full` runs every check at its stated size; `Profile::Quick` shrinks the
//! exhaustive families so the whole suite finishes in seconds.

use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chars::{characters, DirichletChar, UnitGroup};
use crate::discrepancy::{
    classify_growth, classify_pm1, classify_pm1_as_printed, digit_recursion_check, effective_spectrum, lex_growth_witness,
    long_sum_max, long_sums_closed, DivisorSumSeq, mean_square_lower_bound, mean_square_t, polymath_construct, rotated_sum,
    rotation_exponents, running_max_slope, ModulusHistogram, ShortScanner, Verdict,
};
use crate::enumerate::monics_up_to;
use crate::error::Result;
use crate::expsums::{gauss, gauss_imprimitive_check, ramanujan, ramanujan_divisor_identity, ramanujan_interval_sum, CheckStatus, RamanujanMethod};
use crate::factor::factor;
use crate::field::{Field, FieldConfig};
use crate::lex::lex_unrank;
use crate::literal::parse_poly;
use crate::multfunc::{ModifiedChar, MultFn};
use crate::phase::{Phase, RootOfUnity};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The statement is false as written; every true part of it was verified.
    Unattainable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unattainable => "FAIL (unattainable as stated)",
        };
        format!("criterion {:>2} {tag}: {}: {} [{:.1}s]", self.id, self.title, self.detail, self.seconds)
    }
}

pub const TITLES: [&str; 10] = [
    "long sums, closed form vs enumeration",
    "bounded case certificate",
    "unbounded case growth exponent",
    "+-1 classification vs root multiplicity",
    "Gauss sums",
    "Ramanujan sums",
    "short interval sums",
    "lexicographic digit recursion",
    "rotation construction",
    "Polymath constructor",
];

pub fn run(id: u8, profile: Profile) -> CriterionReport {
    let start = Instant::now();
    let out = match id {
        1 => long_oracle(profile),
        2 => certificate(profile),
        3 => growth_exponent(profile),
        4 => pm1_table(profile),
        5 => gauss_sums(profile),
        6 => ramanujan_sums(profile),
        7 => short_intervals(profile),
        8 => lexicographic(profile),
        9 => rotation(profile),
        10 => polymath(profile),
        _ => panic!("no criterion {id}"),
    };
    let (status, detail) = out.unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
    CriterionReport { id, title: TITLES[id as usize - 1], status, detail, seconds: start.elapsed().as_secs_f64() }
}

pub fn run_all(profile: Profile) -> Vec<CriterionReport> {
    (1..=10).map(|id| run(id, profile)).collect()
}

fn field(q: u32) -> Arc<Field> {
    FieldConfig::prime(q).build().expect("prime field")
}

fn pass_if(ok: bool, detail: String) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, detail)
}

fn moduli(f: &Field, max_deg: usize) -> Vec<Poly> {
    monics_up_to(f, max_deg).filter(|g| g.d() >= 1).collect()
}

/// Every vector in {0..m-1}^k.
fn patterns(k: usize, m: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..m.pow(k as u32)).map(move |mut c| {
        (0..k)
            .map(|_| {
                let d = c % m;
                c /= m;
                d
            })
            .collect()
    })
}

/// Modified characters with deg Q <= max_deg and twist values of order dividing `order`;
/// the histograms record monics of degree <= hist_deg.
#[derive(Clone, Copy)]
struct Family {
    max_deg: usize,
    order: u64,
    hist_deg: usize,
}

fn family(profile: Profile) -> Family {
    match profile {
        Profile::Quick => Family { max_deg: 3, order: 2, hist_deg: 8 },
        Profile::Full => Family { max_deg: 4, order: 6, hist_deg: 12 },
    }
}

/// Modified characters with twist values e(a/order) at every prime of Q, for every nonprincipal
/// character mod Q (primitive or not), deg Q <= max_deg, q in {2, 3}. The visitor also gets
/// the histogram of Q and the twist exponents a.
fn for_each_modified(fam: Family, mut visit: impl FnMut(&ModulusHistogram, &ModifiedChar, &[u64]) -> Result<()>) -> Result<()> {
    for q in [2, 3] {
        let f = field(q);
        for m in moduli(&f, fam.max_deg) {
            let hist = ModulusHistogram::new(f.clone(), &m, fam.hist_deg)?;
            for chi in characters(hist.group()) {
                if chi.is_principal() {
                    continue;
                }
                for a in patterns(hist.primes().len(), fam.order) {
                    let tw = hist.primes().iter().zip(&a).map(|(p, &x)| (p.clone(), Phase::rational(x as i64, fam.order))).collect();
                    let mc = ModifiedChar::new_unchecked(chi.clone(), tw)?;
                    visit(&hist, &mc, &a)?;
                }
            }
        }
    }
    Ok(())
}

fn long_oracle(profile: Profile) -> Result<(Status, String)> {
    let mut count = 0usize;
    let mut worst = 0.0f64;
    let mut weights_for: Option<((u32, Poly, u64), Vec<((usize, u64), Complex64)>)> = None;
    let fam = family(profile);
    for_each_modified(fam, |hist, mc, a| {
        let key = (mc.field().q(), mc.modulus().clone(), mc.chi().index());
        if weights_for.as_ref().is_none_or(|(k, _)| *k != key) {
            weights_for = Some((key, hist.character_weights(mc.chi())?));
        }
        let w = &weights_for.as_ref().expect("set above").1;
        let tw: Vec<Complex64> = a.iter().map(|&x| RootOfUnity::new(x as i64, fam.order).to_complex()).collect();
        let brute = hist.long_sums(w, &tw);
        let closed = long_sums_closed(mc, fam.hist_deg)?;
        for (x, y) in brute.iter().zip(&closed) {
            worst = worst.max((x - y).norm());
        }
        count += 1;
        Ok(())
    })?;
    Ok(pass_if(worst <= 1e-7, format!("{count} modified characters, N <= {}, max |closed - brute| = {worst:.2e}", fam.hist_deg)))
}

fn certificate(profile: Profile) -> Result<(Status, String)> {
    let n_max = match profile {
        Profile::Quick => 10_000,
        Profile::Full => 1_000_000,
    };
    let (mut bounded, mut early, mut late) = (0usize, 0usize, 0usize);
    let mut worst_ratio = 0.0f64;
    let mut example = String::new();
    // the histograms are not used here
    for_each_modified(Family { hist_deg: 1, ..family(profile) }, |_, mc, _| {
        let rep = classify_growth(mc)?;
        if rep.verdict != Verdict::Bounded {
            return Ok(());
        }
        bounded += 1;
        let cert = rep.bound_certificate.expect("bounded verdict");
        let from = rep.certificate_from.expect("bounded verdict") as u64;
        let lm = long_sum_max(mc, n_max)?;
        if lm.max > cert + 1e-4 {
            // the bound is derived for N >= deg num; look at the tail separately
            let tail = long_sum_tail_max(mc, from, &lm)?;
            if tail > cert + 1e-4 {
                late += 1;
                worst_ratio = worst_ratio.max(tail / cert);
            } else {
                early += 1;
                if example.is_empty() {
                    example = format!("{} chi={} N={} |S_N|={:.4} > {:.4}", mc.literal(), mc.chi().literal(), lm.argmax, lm.max, cert);
                }
            }
        }
        Ok(())
    })?;
    let detail = format!(
        "{bounded} bounded instances, N <= {n_max}; violations for N >= deg num: {late} (worst ratio {worst_ratio:.3}); \
         violations only at N < deg num: {early}{}",
        if example.is_empty() { String::new() } else { format!(" (e.g. {example})") }
    );
    let status = match (late, early) {
        (0, 0) => Status::Pass,
        (0, _) => Status::Unattainable,
        _ => Status::Fail,
    };
    Ok((status, detail))
}

/// max over from <= N <= n_max of |S_N|, using the period found by `long_sum_max` when there is one.
fn long_sum_tail_max(mc: &ModifiedChar, from: u64, lm: &crate::discrepancy::LongMax) -> Result<f64> {
    // past dQ + (recurrence order) the sums repeat with the detected period
    let settled = mc.modulus().d() as u64 + DivisorSumSeq::new(mc).order() as u64;
    let end = lm.period.map_or(lm.n_max, |t| (settled.max(from) + t).min(lm.n_max));
    let sums = long_sums_closed(mc, end as usize)?;
    Ok(sums[from as usize..].iter().map(|z| z.norm()).fold(0.0, f64::max))
}

fn first_primitive(f: &Arc<Field>, m: &Poly) -> Result<DirichletChar> {
    let g = UnitGroup::new(f.clone(), m)?;
    characters(&g)
        .into_iter()
        .find(|c| c.is_primitive())
        .ok_or_else(|| crate::Error::InvalidArgument(format!("no primitive character mod {}", f.fmt_poly(m))))
}

fn untwisted(q: u32, modulus: &str) -> Result<ModifiedChar> {
    let f = field(q);
    let m = parse_poly(&f, modulus)?;
    ModifiedChar::untwisted(first_primitive(&f, &m)?)
}

fn growth_exponent(profile: Profile) -> Result<(Status, String)> {
    let hi = match profile {
        Profile::Quick => 14,
        Profile::Full => 17,
    };
    let b2 = untwisted(2, "t^2*(t+1)^2")?;
    let b3 = untwisted(2, "t^2*(t+1)^2*(t^2+t+1)")?;
    let (e2, e3) = (effective_spectrum(&b2).b, effective_spectrum(&b3).b);
    let s2 = running_max_slope(&b2, 10, hi)?.slope;
    let s3 = running_max_slope(&b3, 10, hi)?.slope;
    let ok = e2 == 2 && e3 == 3 && (s2 - 1.0).abs() <= 0.15 && (s3 - 2.0).abs() <= 0.2;
    Ok(pass_if(ok, format!("b=2: slope {s2:.4} (target 1 +- 0.15); b=3: slope {s3:.4} (target 2 +- 0.2); N in [2^10, 2^{hi}]")))
}

fn pm1_table(profile: Profile) -> Result<(Status, String)> {
    let max_deg = match profile {
        Profile::Quick => 4,
        Profile::Full => 6,
    };
    let (mut tested, mut disagree, mut printed_disagree) = (0usize, 0usize, 0usize);
    let mut printed_example = String::new();
    for q in [2, 3] {
        let f = field(q);
        for m in moduli(&f, max_deg) {
            let g = UnitGroup::new(f.clone(), &m)?;
            let chars = characters(&g);
            // one character per parity class, primitive when possible
            let mut picks: Vec<DirichletChar> = Vec::new();
            for even in [true, false] {
                let mut cands = chars.iter().filter(|c| !c.is_principal() && c.is_even() == even);
                let first = cands.clone().next().cloned();
                if let Some(c) = cands.find(|c| c.is_primitive()).cloned().or(first) {
                    picks.push(c);
                }
            }
            let primes: Vec<Poly> = factor(&f, &m)?.primes().cloned().collect();
            for chi in picks {
                for signs in patterns(primes.len(), 2) {
                    let tw = primes.iter().zip(&signs).map(|(p, &s)| (p.clone(), if s == 0 { Phase::ONE } else { Phase::MINUS_ONE }));
                    let mc = ModifiedChar::new_unchecked(chi.clone(), tw.collect())?;
                    let by_roots = if effective_spectrum(&mc).b == 1 { Verdict::Bounded } else { Verdict::Unbounded };
                    let v = classify_pm1(&mc)?;
                    tested += 1;
                    if v != by_roots {
                        disagree += 1;
                    }
                    if classify_pm1_as_printed(&mc)? != by_roots {
                        printed_disagree += 1;
                        if printed_example.is_empty() {
                            printed_example = format!(" (e.g. {} {})", mc.literal(), if mc.chi().is_even() { "even" } else { "odd" });
                        }
                    }
                }
            }
        }
    }
    Ok(pass_if(
        disagree == 0,
        format!(
            "{tested} patterns, deg Q <= {max_deg}: {disagree} disagreements; printed omega-table reading disagrees on {printed_disagree}{printed_example}"
        ),
    ))
}

fn gauss_sums(profile: Profile) -> Result<(Status, String)> {
    let max_deg = family(profile).max_deg;
    let (mut primitive, mut worst) = (0usize, 0.0f64);
    let (mut checked, mut failed, mut outside) = (0usize, 0usize, 0usize);
    for q in [2, 3] {
        let f = field(q);
        for m in moduli(&f, max_deg) {
            let g = UnitGroup::new(f.clone(), &m)?;
            let target = (q as f64).powf(m.d() as f64 / 2.0);
            let residues: Vec<Poly> = (1..=(q as u64).pow(m.d() as u32)).map(|i| if i == (q as u64).pow(m.d() as u32) { m.clone() } else { lex_unrank(&f, i) }).collect();
            for chi in characters(&g) {
                if chi.is_primitive() && !chi.is_principal() {
                    primitive += 1;
                    worst = worst.max((gauss(&chi, &Poly::one())?.norm() - target).abs());
                }
                if chi.is_primitive() {
                    continue;
                }
                for b in &residues {
                    let c = gauss_imprimitive_check(&chi, b)?;
                    match c.status {
                        CheckStatus::Pass => checked += 1,
                        CheckStatus::Fail => failed += 1,
                        CheckStatus::HypothesisViolated => outside += 1,
                    }
                }
            }
        }
    }
    Ok(pass_if(
        worst <= 1e-9 && failed == 0,
        format!(
            "{primitive} primitive characters, max ||tau| - q^(deg Q/2)| = {worst:.2e}; imprimitive formula: {checked} pass, {failed} fail, \
             {outside} outside its hypotheses (deg Q <= {max_deg}, every B mod Q)"
        ),
    ))
}

fn ramanujan_sums(profile: Profile) -> Result<(Status, String)> {
    let max_deg = family(profile).max_deg;
    let (mut method_bad, mut identity_bad, mut corrected_bad, mut claim_bad_inside, mut claim_bad_outside) = (0, 0, 0, 0, 0);
    let mut cases = 0usize;
    let mut example = String::new();
    for q in [2, 3] {
        let f = field(q);
        for m in moduli(&f, max_deg) {
            for i in 0..(q as u64).pow(m.d() as u32) {
                let h = lex_unrank(&f, i);
                cases += 1;
                if ramanujan(&f, &m, &h, RamanujanMethod::Definition)? != ramanujan(&f, &m, &h, RamanujanMethod::Moebius)? {
                    method_bad += 1;
                }
                if !ramanujan_divisor_identity(&f, &m, &h)?.holds {
                    identity_bad += 1;
                }
            }
            for n in -1..=m.d() as i64 + 1 {
                let r = ramanujan_interval_sum(&f, &m, n)?;
                if r.value != r.corrected_value {
                    corrected_bad += 1;
                }
                if r.value != r.claimed_value {
                    if n >= 1 && n < m.d() as i64 {
                        claim_bad_inside += 1;
                        if example.is_empty() {
                            example = format!("q={q} Q={} n={n}: sum = {}, claimed 0", f.fmt_poly(&m), r.value);
                        }
                    } else {
                        claim_bad_outside += 1;
                    }
                }
            }
        }
    }
    let detail = format!(
        "{cases} (Q, H) pairs: definition vs Moebius {method_bad} mismatches, divisor identity {identity_bad} failures; \
         interval sums: phi(Q) / 0 values fail {claim_bad_outside} times for n <= 0 or n >= deg Q and {claim_bad_inside} times \
         for 1 <= n < deg Q{}; corrected formula fails {corrected_bad} times",
        if example.is_empty() { String::new() } else { format!(" (e.g. {example})") }
    );
    let true_parts = method_bad == 0 && identity_bad == 0 && corrected_bad == 0 && claim_bad_outside == 0;
    let status = match (true_parts, claim_bad_inside) {
        (false, _) => Status::Fail,
        (true, 0) => Status::Pass,
        (true, _) => Status::Unattainable,
    };
    Ok((status, detail))
}

fn short_intervals(profile: Profile) -> Result<(Status, String)> {
    let (n_max, hs): (usize, &[usize]) = match profile {
        Profile::Quick => (10, &[4, 6]),
        Profile::Full => (14, &[4, 6, 8]),
    };
    // part 1: prime powers of degree <= 3 over F_2 with f(P) in mu_6
    let f2 = field(2);
    let (mut instances, mut rising, mut constant) = (0usize, 0usize, 0.0f64);
    for m in moduli(&f2, 3) {
        let fz = factor(&f2, &m)?;
        if fz.factors.len() != 1 {
            continue;
        }
        let p = fz.factors[0].0.clone();
        let g = UnitGroup::new(f2.clone(), &m)?;
        for chi in characters(&g).into_iter().filter(|c| c.is_primitive() && !c.is_principal()) {
            for a in 0..6 {
                let mc = ModifiedChar::new(chi.clone(), vec![(p.clone(), Phase::rational(a, 6))])?;
                let rows = ShortScanner::new(&mc.to_multfn(), n_max)?.envelope(6, n_max)?;
                instances += 1;
                constant = constant.max(rows[6].envelope);
                if rows[6].envelope > rows[4].envelope + 1e-9 {
                    rising += 1;
                }
            }
        }
    }
    // part 2: T / H^(omega - 1) for Q = t^2 (t+1)^2, f = 1 at both primes
    let mc = untwisted(2, "t^2*(t+1)^2")?;
    let f = mc.to_multfn();
    let mut below = 0usize;
    let mut min_ratio = f64::INFINITY;
    let mut ratios = Vec::new();
    for &h in hs {
        let n = h + 10;
        let t = mean_square_t(&f, h, n)?;
        let lb = mean_square_lower_bound(&mc, h, n)?;
        let ratio = t / h as f64;
        ratios.push(format!("H={h}: T={t:.4}, T/H={ratio:.4}, bound={:.4}, slack={}", lb.value, lb.slack));
        min_ratio = min_ratio.min(ratio);
        if ratio < lb.value - 0.1 {
            below += 1;
        }
    }
    let detail = format!(
        "{instances} prime-power characters: sup over H <= 6, N <= {n_max} at most {constant:.4}, rising from H=4 to H=6 in {rising}; \
         Q = t^2(t+1)^2, N = H + 10: {}; min T/H = {min_ratio:.4}, below bound - 0.1: {below}",
        ratios.join("; ")
    );
    Ok(pass_if(rising == 0 && below == 0 && min_ratio > 0.0, detail))
}

fn lexicographic(profile: Profile) -> Result<(Status, String)> {
    let (triples, witness_n) = match profile {
        Profile::Quick => (200, 1u64 << 14),
        Profile::Full => (1000, 1u64 << 20),
    };
    let mut parts = Vec::new();
    let (mut failures, mut strict, mut tested) = (0usize, 0usize, 0usize);
    let mut witnesses: Vec<(String, MultFn)> = Vec::new();
    for q in [2u32, 3] {
        let f = field(q);
        for r in 1..=3u32 {
            let m = f.poly_pow(&Poly::t(), r as u64);
            let Ok(chi) = first_primitive(&f, &m) else { continue };
            let n_max = if q == 2 { 1 << 16 } else { 3u64.pow(10) };
            let mc = ModifiedChar::new(chi, vec![(Poly::t(), Phase::rational(1, 6))])?;
            let rep = digit_recursion_check(&mc, triples, n_max, r as u64)?;
            tested += rep.tested;
            failures += rep.failures;
            strict += rep.strict_failures;
            parts.push(format!("q={q} r={r}"));
            witnesses.push((mc.literal(), mc.to_multfn()));
        }
    }
    let f2 = field(2);
    let p = parse_poly(&f2, "t^2+t+1")?;
    let chi = first_primitive(&f2, &p)?;
    witnesses.push(("mod t^2+t+1, f(P)=1".into(), ModifiedChar::untwisted(chi)?.to_multfn()));
    let trivial_t = DirichletChar::principal(UnitGroup::new(f2.clone(), &Poly::t())?);
    witnesses.push(("mod t, f(t)=-1".into(), MultFn::character(trivial_t).with_prime_values([(Poly::t(), Phase::MINUS_ONE)])?));
    let mut few = Vec::new();
    for (name, g) in &witnesses {
        let w = lex_growth_witness(g, witness_n)?;
        if w.records.len() < 3 {
            few.push(format!("{name}: {} records", w.records.len()));
        }
    }
    let detail = format!(
        "{tested} triples over {} with prefixes <G> <= X: {failures} failures (strict prefixes <G> < X: {strict} failures); \
         {} witnesses below N = {witness_n}, {} with fewer than 3 record maxima{}",
        parts.join(", "),
        witnesses.len(),
        few.len(),
        if few.is_empty() { String::new() } else { format!(" ({})", few.join(", ")) }
    );
    Ok(pass_if(failures == 0 && few.is_empty(), detail))
}

fn rotation(profile: Profile) -> Result<(Status, String)> {
    let instances = match profile {
        Profile::Quick => 200,
        Profile::Full => 1000,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let cis = |x: f64| Complex64::from_polar(1.0, std::f64::consts::TAU * x);
    let (mut failures, mut worst) = (0usize, f64::INFINITY);
    for _ in 0..instances {
        let m = rng.gen_range(1..=100usize);
        let w: Vec<Complex64> = (0..m).map(|_| cis(rng.gen())).collect();
        let zeta: Vec<Complex64> = (0..m)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    let n = rng.gen_range(2..=12u32);
                    cis(rng.gen_range(1..n) as f64 / n as f64)
                } else {
                    cis(rng.gen_range(1e-6..1.0 - 1e-6))
                }
            })
            .collect();
        let k = rotation_exponents(&w, &zeta)?;
        let s = rotated_sum(&w, &zeta, &k).norm();
        worst = worst.min(s / (m as f64 / 7.0));
        if s < m as f64 / 7.0 {
            failures += 1;
        }
    }
    Ok(pass_if(failures == 0, format!("{instances} instances, m <= 100: {failures} failures, min |sum| / (m/7) = {worst:.3}")))
}

fn polymath(profile: Profile) -> Result<(Status, String)> {
    let check_deg = match profile {
        Profile::Quick => 10,
        Profile::Full => 12,
    };
    let st = polymath_construct(2, 2, 4, 30, crate::discrepancy::polymath::NODE_LIMIT)?;
    let in_range = st.records.iter().all(|r| (0..=st.c).contains(&r.cumulative));
    let f2 = field(2);
    let f = st.to_multfn(&f2, check_deg)?;
    let en = crate::discrepancy::enumerate_alpha_beta(&f, check_deg)?;
    let mismatch = st.records.iter().zip(&en).filter(|(r, (a, b))| r.alpha != *a || r.beta != *b).count();
    Ok(pass_if(
        in_range && st.c <= 4 && mismatch == 0,
        format!(
            "C = {}, d <= 30, {} search nodes, |alpha_i| < 2^i from i = {}; enumeration mismatches for d <= {check_deg}: {mismatch}",
            st.c, st.nodes, st.burn_in
        ),
    ))
}
