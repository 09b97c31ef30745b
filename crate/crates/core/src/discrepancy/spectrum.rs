//! Roots of p(z) = prod over P | Q of (z^{deg P} - conj f(P)), their multiplicities, the
//! partial-fraction coefficients, and the growth classification of long sums.

use num_complex::Complex64;
use serde::Serialize;

use super::long::{horner, LPolynomial};
use crate::arith::v2;
use crate::error::{Error, Result};
use crate::multfunc::ModifiedChar;
use crate::phase::{circle_distance, Phase, RootOfUnity, TOL};

/// Root distances inside [TOL, AMBIGUOUS) are neither merged nor trusted as distinct.
pub const AMBIGUOUS: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRoot {
    /// the root as a rotation e(x)
    pub rotation: Phase,
    pub multiplicity: u32,
}

impl SpectrumRoot {
    pub fn value(&self) -> Complex64 {
        self.rotation.to_complex()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSpectrum {
    pub roots: Vec<SpectrumRoot>,
    /// largest multiplicity
    pub b: u32,
    pub exact: bool,
    /// two roots closer than 1e-6 but not within 1e-9
    pub ambiguous: bool,
}

impl RootSpectrum {
    pub fn degree(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// prod (z - lambda_j)^{b_j}, ascending coefficients.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for r in &self.roots {
            for _ in 0..r.multiplicity {
                let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
                for (i, x) in c.iter().enumerate() {
                    next[i + 1] += x;
                    next[i] -= x * r.value();
                }
                c = next;
            }
        }
        c
    }
}

/// The roots of z^d = conj(v): e((-x + j)/d).
fn prime_roots(d: usize, v: &Phase) -> Vec<Phase> {
    match v {
        Phase::Rational(r) => (0..d as i64)
            .map(|j| Phase::Rational(RootOfUnity::new(-(r.num() as i64) + j * r.den() as i64, r.den() * d as u64)))
            .collect(),
        Phase::Real(x) => (0..d).map(|j| Phase::real((j as f64 - x) / d as f64)).collect(),
    }
}

fn collect(list: Vec<Phase>) -> RootSpectrum {
    let exact = list.iter().all(|p| p.as_rational().is_some());
    if exact {
        let mut rs: Vec<RootOfUnity> = list.iter().map(|p| p.as_rational().expect("rational")).collect();
        rs.sort_by(|a, b| a.turns().total_cmp(&b.turns()));
        let mut roots: Vec<SpectrumRoot> = Vec::new();
        for r in rs {
            match roots.last_mut() {
                Some(last) if last.rotation == Phase::Rational(r) => last.multiplicity += 1,
                _ => roots.push(SpectrumRoot { rotation: Phase::Rational(r), multiplicity: 1 }),
            }
        }
        let b = roots.iter().map(|r| r.multiplicity).max().unwrap_or(0);
        return RootSpectrum { roots, b, exact, ambiguous: false };
    }
    let mut xs: Vec<f64> = list.iter().map(|p| p.turns()).collect();
    xs.sort_by(f64::total_cmp);
    let mut ambiguous = false;
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for x in xs {
        match clusters.last_mut() {
            Some(c) if circle_distance(*c.last().expect("nonempty"), x) < TOL => c.push(x),
            Some(c) => {
                if circle_distance(*c.last().expect("nonempty"), x) < AMBIGUOUS {
                    ambiguous = true;
                }
                clusters.push(vec![x]);
            }
            None => clusters.push(vec![x]),
        }
    }
    // wrap-around between the last and first cluster
    if clusters.len() > 1 {
        let d = circle_distance(clusters[0][0], *clusters.last().unwrap().last().unwrap());
        if d < TOL {
            let last = clusters.pop().unwrap();
            clusters[0].extend(last);
        } else if d < AMBIGUOUS {
            ambiguous = true;
        }
    }
    let roots: Vec<SpectrumRoot> = clusters
        .iter()
        .map(|c| SpectrumRoot { rotation: Phase::real(c[0]), multiplicity: c.len() as u32 })
        .collect();
    let b = roots.iter().map(|r| r.multiplicity).max().unwrap_or(0);
    RootSpectrum { roots, b, exact, ambiguous }
}

/// Roots of p(z) = prod over P | Q of (z^{deg P} - conj f(P)).
pub fn root_spectrum(f: &ModifiedChar) -> RootSpectrum {
    collect(f.twists().iter().flat_map(|(p, v)| prime_roots(p.d(), v)).collect())
}

/// Roots of the denominator of the generating function of the long sums, in the variable of
/// p: the roots of p, plus the root 1 when chi is nontrivial on the constants.
pub fn effective_spectrum(f: &ModifiedChar) -> RootSpectrum {
    let mut list: Vec<Phase> = f.twists().iter().flat_map(|(p, v)| prime_roots(p.d(), v)).collect();
    if !f.chi().is_even() {
        list.push(Phase::ONE);
    }
    collect(list)
}

/// a_{j,l} for 1 / prod_j (1 - mu_j z)^{b_j} = sum_{j,l} a_{j,l} (1 - mu_j z)^{-l}, where the
/// mu_j are the conjugates of the spectrum roots. Row j holds a_{j,1}, ..., a_{j,b_j}.
pub fn partial_fractions(spec: &RootSpectrum) -> Vec<Vec<Complex64>> {
    let mus: Vec<(Complex64, usize)> = spec.roots.iter().map(|r| (r.value().conj(), r.multiplicity as usize)).collect();
    mus.iter()
        .enumerate()
        .map(|(j, &(mj, bj))| {
            // g_j(w) = prod_{k != j} ((1 - r_k) + r_k w)^{-b_k}, r_k = mu_k / mu_j, to order b_j
            let mut g = vec![Complex64::new(0.0, 0.0); bj];
            g[0] = Complex64::new(1.0, 0.0);
            for (k, &(mk, bk)) in mus.iter().enumerate() {
                if k == j {
                    continue;
                }
                let r = mk / mj;
                let inv = 1.0 / (1.0 - r);
                let ratio = -r * inv;
                let mut factor = vec![Complex64::new(0.0, 0.0); bj];
                let mut term = inv;
                for x in factor.iter_mut() {
                    *x = term;
                    term *= ratio;
                }
                for _ in 0..bk {
                    let mut next = vec![Complex64::new(0.0, 0.0); bj];
                    for (a, ga) in g.iter().enumerate() {
                        for (b, fb) in factor.iter().enumerate().take(bj - a) {
                            next[a + b] += ga * fb;
                        }
                    }
                    g = next;
                }
            }
            // a_{j,l} = [w^{b_j - l}] g_j
            (1..=bj).map(|l| g[bj - l]).collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bounded,
    Unbounded,
    Indeterminate,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    #[serde(rename = "Q")]
    pub modulus: String,
    pub twists: Vec<(String, String)>,
    pub roots: Vec<SpectrumRoot>,
    /// chi is nontrivial on the constants, which adds the root 1
    pub odd: bool,
    pub verdict: Verdict,
    /// growth exponent b - 1 of the long sums along a subsequence
    pub exponent: Option<u32>,
    /// sum_j |a_{j,1}| |num(lambda_j)|, valid for N >= `certificate_from`
    pub bound_certificate: Option<f64>,
    pub certificate_from: Option<usize>,
}

/// Bounded iff every root of the effective spectrum is simple, with the explicit bound
/// sum_j |a_{j,1}| |num(lambda_j)| for N >= deg num, where num = L/(1 - z) for even chi and
/// L for odd chi.
pub fn classify_growth(f: &ModifiedChar) -> Result<GrowthReport> {
    let fld = f.field();
    let spec = effective_spectrum(f);
    let odd = !f.chi().is_even();
    let twists = f.twists().iter().map(|(p, v)| (fld.fmt_poly(p), v.to_string())).collect();
    let mut report = GrowthReport {
        modulus: fld.fmt_poly(f.modulus()),
        twists,
        roots: spec.roots.clone(),
        odd,
        verdict: Verdict::Indeterminate,
        exponent: None,
        bound_certificate: None,
        certificate_from: None,
    };
    if spec.ambiguous {
        return Ok(report);
    }
    if spec.b >= 2 {
        report.verdict = Verdict::Unbounded;
        report.exponent = Some(spec.b - 1);
        return Ok(report);
    }
    let lp = LPolynomial::new(f.chi())?;
    let num = lp.numerator();
    let a = partial_fractions(&spec);
    let cert = spec.roots.iter().zip(&a).map(|(r, aj)| aj[0].norm() * horner(&num, r.value()).norm()).sum();
    report.verdict = Verdict::Bounded;
    report.exponent = Some(0);
    report.bound_certificate = Some(cert);
    report.certificate_from = Some(num.len().saturating_sub(1));
    Ok(report)
}

fn pm1_signs(f: &ModifiedChar) -> Result<Vec<(u32, bool)>> {
    f.twists()
        .iter()
        .map(|(p, v)| {
            if *v == Phase::ONE {
                Ok((v2(p.d() as u64), true))
            } else if *v == Phase::MINUS_ONE {
                Ok((v2(p.d() as u64), false))
            } else {
                Err(Error::InvalidArgument(format!("twist value {v} is not +1 or -1")))
            }
        })
        .collect()
}

/// Bounded/unbounded for +-1 twists from pairwise root collisions: two +1 primes always
/// share the root 1; -1 primes of degrees m, n share a root iff v2(m) = v2(n); a -1 prime of
/// degree m and a +1 prime of degree n share one iff v2(m) < v2(n). An odd chi contributes
/// the root 1 like a +1 prime of degree 1.
pub fn classify_pm1(f: &ModifiedChar) -> Result<Verdict> {
    let mut signs = pm1_signs(f)?;
    if !f.chi().is_even() {
        signs.push((0, true));
    }
    let clash = |a: (u32, bool), b: (u32, bool)| match (a.1, b.1) {
        (true, true) => true,
        (false, false) => a.0 == b.0,
        (false, true) => a.0 < b.0,
        (true, false) => b.0 < a.0,
    };
    for i in 0..signs.len() {
        for j in i + 1..signs.len() {
            if clash(signs[i], signs[j]) {
                return Ok(Verdict::Unbounded);
            }
        }
    }
    Ok(Verdict::Bounded)
}

/// The omega(Q) = 1, 2, 3, >= 4 table in its printed form: bounded for a prime power; for two
/// primes iff f = (-1, +1) with v2(deg P1) >= v2(deg P2); for three iff f = (-1, -1, +1) with
/// v2(deg P1) != v2(deg P2) and both >= v2(deg P3); never for four or more.
pub fn classify_pm1_as_printed(f: &ModifiedChar) -> Result<Verdict> {
    let s = pm1_signs(f)?;
    let bounded = match s.len() {
        0 | 1 => true,
        2 => (0..2).any(|i| {
            let (a, b) = (s[i], s[1 - i]);
            !a.1 && b.1 && a.0 >= b.0
        }),
        3 => (0..3).any(|k| {
            let plus = s[k];
            let minus: Vec<(u32, bool)> = (0..3).filter(|&i| i != k).map(|i| s[i]).collect();
            plus.1 && minus.iter().all(|m| !m.1 && m.0 >= plus.0) && minus[0].0 != minus[1].0
        }),
        _ => false,
    };
    Ok(if bounded { Verdict::Bounded } else { Verdict::Unbounded })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{characters, UnitGroup};
    use crate::field::FieldConfig;
    use crate::literal::parse_poly;
    use crate::multfunc::parse_modchar;

    /// The modified character with the first primitive chi mod Q.
    fn modchar(q: u32, modulus: &str, tw: &str) -> ModifiedChar {
        let f = FieldConfig::for_q(q).unwrap().build().unwrap();
        let m = parse_poly(&f, modulus).unwrap();
        let chi = characters(&UnitGroup::new(f.clone(), &m).unwrap()).into_iter().find(|c| c.is_primitive()).unwrap();
        let tuple: Vec<String> = chi.exponents().iter().map(u64::to_string).collect();
        parse_modchar(&format!("modchar{{q={q},Q={modulus},chi=({}),twist={{{tw}}}}}", tuple.join(",")), None).unwrap()
    }

    #[test]
    fn spectra() {
        let one = modchar(2, "t^2*(t+1)^2", "t:0/1,t+1:0/1");
        let s = root_spectrum(&one);
        assert_eq!((s.b, s.roots.len()), (2, 1));
        let split = modchar(2, "t^2*(t+1)^2", "t:1/2,t+1:0/1");
        let s = root_spectrum(&split);
        assert_eq!((s.b, s.roots.len()), (1, 2));
        let pp = modchar(2, "t^2+t+1", "t^2+t+1:1/3");
        let s = root_spectrum(&pp);
        assert_eq!((s.b, s.degree()), (1, 2));
        let rec = s.reconstruct();
        // z^2 - e(-1/3)
        assert!((rec[0] + Phase::rational(-1, 3).to_complex()).norm() < 1e-12);
        assert!((rec[1]).norm() < 1e-12 && (rec[2] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn numeric_roots_cluster() {
        let f = modchar(2, "t^2*(t+1)^2", "t:0.25,t+1:0.5");
        let s = root_spectrum(&f);
        assert!(!s.exact && !s.ambiguous);
        let f = modchar(2, "t^2*(t+1)^2", "t:0.5,t+1:0.5000000001");
        assert_eq!(root_spectrum(&f).b, 2);
        let f = modchar(2, "t^2*(t+1)^2", "t:0.5,t+1:0.5000001");
        assert!(root_spectrum(&f).ambiguous);
        assert_eq!(classify_growth(&f).unwrap().verdict, Verdict::Indeterminate);
    }

    #[test]
    fn partial_fraction_identity() {
        let f = modchar(2, "t^2*(t+1)^2*(t^2+t+1)", "t:0/1,t+1:0/1,t^2+t+1:1/2");
        let spec = root_spectrum(&f);
        let a = partial_fractions(&spec);
        for z in [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.45)] {
            let lhs: Complex64 = 1.0 / spec.roots.iter().fold(Complex64::new(1.0, 0.0), |acc, r| {
                acc * (1.0 - r.value().conj() * z).powu(r.multiplicity)
            });
            let rhs: Complex64 = spec
                .roots
                .iter()
                .zip(&a)
                .map(|(r, aj)| {
                    aj.iter().enumerate().map(|(l, c)| c / (1.0 - r.value().conj() * z).powu(l as u32 + 1)).sum::<Complex64>()
                })
                .sum();
            assert!((lhs - rhs).norm() < 1e-9);
        }
    }

    #[test]
    fn verdicts() {
        let f = modchar(2, "t^2*(t+1)^2", "t:1/2,t+1:0/1");
        let r = classify_growth(&f).unwrap();
        assert_eq!(r.verdict, Verdict::Bounded);
        assert!(r.bound_certificate.unwrap() > 0.0);
        assert_eq!(classify_pm1(&f).unwrap(), Verdict::Bounded);
        let g = modchar(2, "t^2*(t+1)^2", "t:0/1,t+1:0/1");
        assert_eq!(classify_growth(&g).unwrap().exponent, Some(1));
        assert_eq!(classify_pm1(&g).unwrap(), Verdict::Unbounded);
        // three primes of degrees 1, 1, 2 with signs -, +, -
        let h = modchar(2, "t^2*(t+1)^2*(t^2+t+1)", "t:1/2,t+1:0/1,t^2+t+1:1/2");
        assert_eq!(classify_pm1(&h).unwrap(), Verdict::Bounded);
        assert_eq!(classify_pm1_as_printed(&h).unwrap(), Verdict::Bounded);
        assert_eq!(classify_growth(&h).unwrap().verdict, Verdict::Bounded);
    }

    #[test]
    fn printed_table_gap() {
        // two -1 primes of degrees 1 and 2: p(z) = (z + 1)(z^2 + 1) has simple roots
        let f = modchar(2, "t^2*(t^2+t+1)", "t:1/2,t^2+t+1:1/2");
        assert_eq!(classify_growth(&f).unwrap().verdict, Verdict::Bounded);
        assert_eq!(classify_pm1(&f).unwrap(), Verdict::Bounded);
        assert_eq!(classify_pm1_as_printed(&f).unwrap(), Verdict::Unbounded);
    }
}
