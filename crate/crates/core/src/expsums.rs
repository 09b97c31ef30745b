//! Ramanujan sums and Gauss sums over F_q[t].

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{divisors, mobius, phi};
use crate::chars::additive::residue_trace;
use crate::chars::DirichletChar;
use crate::enumerate::monic_count;
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::Field;
use crate::lex::lex_unrank;
use crate::numeric::{round_to_int, sum_terms};
use crate::phase::{turns_to_complex, TOL};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RamanujanMethod {
    Definition,
    Moebius,
}

fn check_modulus(f: &Field, g: &Poly) -> Result<()> {
    f.check_poly(g)?;
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !g.is_monic() {
        return Err(Error::InvalidArgument("modulus must be monic".into()));
    }
    Ok(())
}

/// Residues mod G (degree d) in code order.
fn residues(f: &Field, d: usize) -> impl Iterator<Item = Poly> + '_ {
    (0..monic_count(f.q(), d).expect("small modulus")).map(move |i| lex_unrank(f, i))
}

/// e_F(A/G) as a complex number.
fn e_f(f: &Field, a: &Poly, g: &Poly) -> Complex64 {
    turns_to_complex(residue_trace(f, a, g).expect("nonzero modulus") as u64, f.p() as u64)
}

/// c_G(H) by the chosen method.
pub fn ramanujan(f: &Field, g: &Poly, h: &Poly, method: RamanujanMethod) -> Result<i128> {
    check_modulus(f, g)?;
    f.check_poly(h)?;
    match method {
        RamanujanMethod::Definition => {
            let hr = f.poly_rem(h, g)?;
            let n = monic_count(f.q(), g.d())? as usize;
            let terms = residues(f, g.d())
                .filter(|a| g.d() == 0 || f.poly_gcd(a, g).is_one())
                .map(|a| e_f(f, &f.poly_mul(&a, &hr), g));
            let s = sum_terms(terms, n);
            round_to_int(s, TOL).ok_or_else(|| Error::Internal(format!("Ramanujan sum {s} is not an integer")))
        }
        RamanujanMethod::Moebius => {
            let fz = factor(f, g)?;
            let mut s = 0i128;
            for e in divisors(f, &fz) {
                if f.divides(&e, h) {
                    let cof = f.poly_div_exact(g, &e).expect("divisor");
                    let mu = mobius(&factor(f, &cof)?) as i128;
                    s += mu * (f.q() as i128).pow(e.d() as u32);
                }
            }
            Ok(s)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
}

/// Checks sum over D | G of c_D(H) = q^{deg G} 1_{G | H}.
pub fn ramanujan_divisor_identity(f: &Field, g: &Poly, h: &Poly) -> Result<IdentityReport> {
    check_modulus(f, g)?;
    let fz = factor(f, g)?;
    let mut lhs = 0;
    for d in divisors(f, &fz) {
        lhs += ramanujan(f, &d, h, RamanujanMethod::Definition)?;
    }
    let rhs = if f.divides(g, h) { (f.q() as i128).pow(g.d() as u32) } else { 0 };
    Ok(IdentityReport { lhs, rhs, holds: lhs == rhs })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalSumReport {
    pub n: i64,
    /// sum over all M with deg M < n of c_Q(M), by enumeration
    pub value: i128,
    /// phi(Q) for n <= 0, 0 for n >= 1
    pub claimed_value: i128,
    /// phi(Q) + sum over E | Q with deg E <= n of mu(Q/E) (q^n - q^{deg E}), for n >= 1
    pub corrected_value: i128,
}

/// sum over deg M < n of c_Q(M) (M = 0 included), with the two predicted values.
pub fn ramanujan_interval_sum(f: &Field, q: &Poly, n: i64) -> Result<IntervalSumReport> {
    check_modulus(f, q)?;
    if q.d() == 0 {
        return Err(Error::InvalidArgument("deg Q must be at least 1".into()));
    }
    let fz = factor(f, q)?;
    let phi_q = phi(f.q(), &fz);
    let count = if n <= 0 { 1 } else { monic_count(f.q(), n as usize)? };
    let mut value = 0;
    for i in 0..count {
        value += ramanujan(f, q, &lex_unrank(f, i), RamanujanMethod::Definition)?;
    }
    let claimed_value = if n <= 0 { phi_q } else { 0 };
    let mut corrected_value = phi_q;
    if n >= 1 {
        let qq = f.q() as i128;
        for e in divisors(f, &fz) {
            if e.d() as i64 <= n {
                let mu = mobius(&factor(f, &f.poly_div_exact(q, &e).expect("divisor"))?) as i128;
                corrected_value += mu * (qq.pow(n as u32) - qq.pow(e.d() as u32));
            }
        }
    }
    Ok(IntervalSumReport { n, value, claimed_value, corrected_value })
}

/// tau(chi, B) = sum over A mod Q of chi(A) e_F(AB/Q).
pub fn gauss(chi: &DirichletChar, b: &Poly) -> Result<Complex64> {
    let f = chi.field();
    f.check_poly(b)?;
    let q = chi.modulus();
    let group = chi.group();
    let ring = group.ring();
    let br = f.poly_rem(b, q)?;
    let den = chi.denominator();
    let terms = group.unit_codes().map(|c| {
        let a = ring.decode(c);
        let v = chi.eval_code(c).expect("unit");
        turns_to_complex(v, den) * e_f(f, &f.poly_mul(&a, &br), q)
    });
    Ok(sum_terms(terms, group.order() as usize))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    HypothesisViolated,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussCheck {
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub hypotheses: bool,
    pub status: CheckStatus,
}

/// Compares tau(chi, B) with tau(chi*) chi*(Q2) conj(chi*)(B) phi((Q2,B)) mu(Q2/(Q2,B)) 1_{(Q,B)|Q2},
/// where chi* is the primitive character mod Q1 = cond(chi) inducing chi and Q2 = Q/Q1.
pub fn gauss_imprimitive_check(chi: &DirichletChar, b: &Poly) -> Result<GaussCheck> {
    let f = chi.field();
    if b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let q = chi.modulus();
    let q1 = chi.conductor().clone();
    let q2 = f.poly_div_exact(q, &q1).expect("conductor divides the modulus");
    let q2_fz = factor(f, &q2)?;
    let hypotheses = f.poly_gcd(&q1, &q2).is_one() && q2_fz.factors.iter().all(|(_, e)| *e == 1);
    let star = chi.primitive_part()?;
    let lhs = gauss(chi, b)?;
    let value = |x: &Poly| star.eval(x).map_or(Complex64::new(0.0, 0.0), |r| r.to_complex());
    let g2 = f.poly_gcd(&q2, b);
    let gqb = f.poly_gcd(q, b);
    let rhs = if f.divides(&gqb, &q2) {
        let tau_star = gauss(&star, &Poly::one())?;
        let phi_g2 = phi(f.q(), &factor(f, &g2)?) as f64;
        let mu = mobius(&factor(f, &f.poly_div_exact(&q2, &g2).expect("gcd divides"))?) as f64;
        tau_star * value(&q2) * value(b).conj() * phi_g2 * mu
    } else {
        Complex64::new(0.0, 0.0)
    };
    let agree = (lhs - rhs).norm() < TOL * (1.0 + lhs.norm());
    let status = match (agree, hypotheses) {
        (true, true) => CheckStatus::Pass,
        (false, true) => CheckStatus::Fail,
        (_, false) => CheckStatus::HypothesisViolated,
    };
    Ok(GaussCheck { lhs: [lhs.re, lhs.im], rhs: [rhs.re, rhs.im], hypotheses, status })
}

/// One row of the batch CSV: q, Q, chi index or "-", B or H, method, value_re, value_im.
#[derive(Clone, Debug)]
pub struct ExpSumRow {
    pub q: u32,
    pub modulus: String,
    pub chi: Option<u64>,
    pub arg: String,
    pub method: String,
    pub value: Complex64,
}

impl ExpSumRow {
    pub const HEADER: &'static str = "q,Q,chi,arg,method,value_re,value_im";

    pub fn to_csv(&self) -> String {
        let chi = self.chi.map_or_else(|| "-".to_string(), |c| c.to_string());
        format!(
            "{},{},{},{},{},{:.16e},{:.16e}",
            self.q,
            csv_field(&self.modulus),
            chi,
            csv_field(&self.arg),
            self.method,
            self.value.re,
            self.value.im
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{characters, induce, UnitGroup};
    use crate::field::FieldConfig;
    use crate::literal::parse_poly;

    #[test]
    fn ramanujan_examples() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        for m in [RamanujanMethod::Definition, RamanujanMethod::Moebius] {
            assert_eq!(ramanujan(&f2, &Poly::t(), &Poly::one(), m).unwrap(), -1);
            assert_eq!(ramanujan(&f2, &Poly::t(), &Poly::t(), m).unwrap(), 1);
        }
        let t2 = parse_poly(&f2, "t^2").unwrap();
        assert_eq!(ramanujan_divisor_identity(&f2, &t2, &Poly::zero()).unwrap().lhs, 4);
        let r = ramanujan_divisor_identity(&f2, &t2, &Poly::t()).unwrap();
        assert_eq!((r.lhs, r.holds), (0, true));
    }

    #[test]
    fn interval_sum_examples() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        assert_eq!(ramanujan_interval_sum(&f2, &Poly::t(), 0).unwrap().value, 1);
        assert_eq!(ramanujan_interval_sum(&f2, &Poly::t(), 1).unwrap().value, 0);
        let q = parse_poly(&f2, "t^2+t+1").unwrap();
        assert_eq!(ramanujan_interval_sum(&f2, &q, 3).unwrap().value, 0);
        // below deg Q the value need not vanish
        let r = ramanujan_interval_sum(&f2, &parse_poly(&f2, "t^2").unwrap(), 1).unwrap();
        assert_eq!((r.value, r.corrected_value), (2, 2));
    }

    #[test]
    fn gauss_examples() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        let q = parse_poly(&f2, "t^2+t+1").unwrap();
        let chars = characters(&UnitGroup::new(f2.clone(), &q).unwrap());
        let g = gauss(&chars[1], &Poly::one()).unwrap();
        assert!((g - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        let principal_t = characters(&UnitGroup::new(f2.clone(), &Poly::t()).unwrap())[0].clone();
        assert!((gauss(&principal_t, &Poly::one()).unwrap() - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        let big = parse_poly(&f2, "t*(t^2+t+1)").unwrap();
        let chi = induce(&chars[1], &big).unwrap();
        for i in 1..8u64 {
            let b = lex_unrank(&f2, i);
            assert_eq!(gauss_imprimitive_check(&chi, &b).unwrap().status, CheckStatus::Pass);
        }
    }
}
