//! Pretentious distance, the long-sum distance minimiser, and Dirichlet-series coefficients.

use num_complex::Complex64;
use serde::Serialize;

use super::MultFn;
use crate::enumerate::irreducibles_up_to;
use crate::error::{Error, Result};
use crate::numeric::golden_min;
use crate::sieve::MonicSieve;

fn same_field(f: &MultFn, g: &MultFn) -> Result<()> {
    if **f.field() != **g.field() {
        return Err(Error::InvalidArgument("functions over different fields".into()));
    }
    Ok(())
}

/// D(f, g; N) = (sum over P of degree <= N of q^{-deg P} (1 - Re f(P) conj g(P)))^{1/2}.
pub fn pretentious_distance(f: &MultFn, g: &MultFn, n: usize) -> Result<f64> {
    same_field(f, g)?;
    let q = f.field().q() as f64;
    let mut s = 0.0;
    for p in irreducibles_up_to(f.field(), n) {
        let z = f.prime_value(&p).to_complex() * g.prime_value(&p).to_complex().conj();
        s += q.powi(-(p.d() as i32)) * (1.0 - z.re);
    }
    Ok(s.max(0.0).sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceMin {
    pub theta: f64,
    /// min over theta of D(f, e_theta; N)^2
    pub value: f64,
    pub grid: usize,
}

/// min over theta in [0,1) of D(f, e_theta; N)^2 by a 2^10-point grid and one
/// golden-section refinement around the best cell.
pub fn long_distance_min(f: &MultFn, n: usize) -> DistanceMin {
    let q = f.field().q() as f64;
    // per degree: pi(d) and the sum of f(P) over P of degree d
    let mut counts = vec![0.0; n + 1];
    let mut sums = vec![Complex64::new(0.0, 0.0); n + 1];
    for p in irreducibles_up_to(f.field(), n) {
        let d = p.d();
        counts[d] += 1.0;
        sums[d] += f.prime_value(&p).to_complex();
    }
    let obj = |theta: f64| -> f64 {
        (1..=n)
            .map(|d| {
                let rot = Complex64::from_polar(1.0, -std::f64::consts::TAU * theta * d as f64);
                q.powi(-(d as i32)) * (counts[d] - (sums[d] * rot).re)
            })
            .sum()
    };
    let grid = 1 << 10;
    let (mut best, mut best_v) = (0.0, f64::INFINITY);
    for i in 0..grid {
        let th = i as f64 / grid as f64;
        let v = obj(th);
        if v < best_v {
            best = th;
            best_v = v;
        }
    }
    let h = 1.0 / grid as f64;
    let (th, v) = golden_min(best - h, best + h, 80, obj);
    let (theta, value) = if v < best_v { (th.rem_euclid(1.0), v) } else { (best, best_v) };
    DistanceMin { theta, value, grid }
}

/// [sum over G in M_n of f(G)] for n <= n_max.
pub fn dirichlet_series_coeffs(f: &MultFn, n_max: usize) -> Result<Vec<Complex64>> {
    let sieve = MonicSieve::new(f.field().clone(), n_max)?;
    Ok(f.degree_tables(&sieve).iter().map(|row| row.iter().sum()).collect())
}

/// The same coefficients from the Euler product over primes of degree <= n_max.
pub fn euler_product_coeffs(f: &MultFn, n_max: usize) -> Vec<Complex64> {
    let mut series = vec![Complex64::new(0.0, 0.0); n_max + 1];
    series[0] = Complex64::new(1.0, 0.0);
    for p in irreducibles_up_to(f.field(), n_max) {
        let d = p.d();
        let v = f.prime_value(&p).to_complex();
        // multiply by 1 / (1 - v z^d): s_n += v s_{n-d}, ascending
        for n in d..=n_max {
            let add = v * series[n - d];
            series[n] += add;
        }
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{characters, UnitGroup};
    use crate::field::FieldConfig;
    use crate::literal::parse_poly;

    #[test]
    fn distance_examples() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        let one = MultFn::one(f2.clone());
        let lam = MultFn::liouville(f2.clone());
        assert_eq!(pretentious_distance(&lam, &lam, 6).unwrap(), 0.0);
        assert!((pretentious_distance(&one, &lam, 1).unwrap().powi(2) - 2.0).abs() < 1e-12);
        let m = long_distance_min(&one, 8);
        assert!(m.value < 1e-9 && (m.theta < 1e-6 || m.theta > 1.0 - 1e-6));
        let third = crate::phase::Phase::rational(1, 3);
        let e3 = one.twist(
            &crate::chars::short_chars(&f2, 0).unwrap()[0],
            crate::chars::ArchimedeanTwist::new(third),
            crate::multfunc::Direction::Apply,
        );
        let m = long_distance_min(&e3, 8);
        assert!((m.theta - 1.0 / 3.0).abs() < 1e-6 && m.value < 1e-9);
        assert!(long_distance_min(&lam, 8).value > 0.1);
    }

    #[test]
    fn series_coefficients() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        let c = dirichlet_series_coeffs(&MultFn::one(f2.clone()), 8).unwrap();
        for (n, x) in c.iter().enumerate() {
            assert_eq!(x.re, (1u64 << n) as f64);
        }
        let q = parse_poly(&f2, "t^3+t+1").unwrap();
        let chi = characters(&UnitGroup::new(f2.clone(), &q).unwrap())[2].clone();
        let f = MultFn::character(chi);
        let c = dirichlet_series_coeffs(&f, 8).unwrap();
        let e = euler_product_coeffs(&f, 8);
        for n in 0..=8 {
            assert!((c[n] - e[n]).norm() < 1e-9);
            if n >= 3 {
                assert!(c[n].norm() < 1e-9);
            }
        }
    }
}
