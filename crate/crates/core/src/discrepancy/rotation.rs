//! Exponents k_j >= 1 with |sum_j zeta_j^{k_j} w_j| >= m/7.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-9;

/// Position on the circle in turns, in [0, 1).
fn turns(z: Complex64) -> f64 {
    (z.arg() / TAU).rem_euclid(1.0)
}

fn cis_turns(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * x.rem_euclid(1.0))
}

/// Distance of x from the nearest integer.
fn dist_int(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Least k among continued-fraction denominators of x with |e(kx) - 1| <= eps.
fn return_time(x: f64, eps: f64) -> u64 {
    let target = |k: u64| (2.0 * (std::f64::consts::PI * dist_int(k as f64 * x)).sin()).abs() <= eps;
    let (mut k0, mut k1) = (0u64, 1u64);
    let mut y = x;
    loop {
        if k1 > 0 && target(k1) {
            return k1;
        }
        let a = y.floor();
        let frac = y - a;
        if frac < 1e-15 {
            break;
        }
        y = 1.0 / frac;
        let next = (y.floor() as u64).saturating_mul(k1).saturating_add(k0);
        if next > 1 << 40 {
            break;
        }
        (k0, k1) = (k1, next);
    }
    // float noise ends the expansion early: fall back to a scan
    (1..).find(|&k| target(k)).expect("Dirichlet approximation")
}

/// Least k >= 1 with e(c + kx) within a quarter turn of 0.
fn enter_half(c: f64, x: f64) -> u64 {
    let inside = |k: u64| dist_int(c + k as f64 * x) <= 0.25;
    if inside(1) {
        return 1;
    }
    // step forward by x, or backward by 1 - x, whichever is at most half a turn
    let (pos, step) = if x <= 0.5 { ((c + x).rem_euclid(1.0), x) } else { ((-(c + x)).rem_euclid(1.0), 1.0 - x) };
    let gap = (0.75 - pos).rem_euclid(1.0);
    let k = 1 + (gap / step).ceil() as u64;
    (k.saturating_sub(1).max(1)..).find(|&k| inside(k)).expect("orbit meets the half circle")
}

fn check_unit(z: Complex64, what: &str) -> Result<()> {
    if (z.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidArgument(format!("{what} = {z} is not on the unit circle")));
    }
    Ok(())
}

/// Exponents for the rotation construction: an arc of length 2pi/3 holding at least m/3 of the w_j
/// is kept nearly fixed, every other term is turned into the half-plane centred on that arc.
pub fn rotation_exponents(w: &[Complex64], zeta: &[Complex64]) -> Result<Vec<u64>> {
    if w.len() != zeta.len() || w.is_empty() {
        return Err(Error::InvalidArgument("w and zeta must be nonempty and of equal length".into()));
    }
    for (a, z) in w.iter().zip(zeta) {
        check_unit(*a, "w")?;
        check_unit(*z, "zeta")?;
        if (z - 1.0).norm() < UNIT_TOL {
            return Err(Error::InvalidArgument("zeta = 1 is not allowed".into()));
        }
    }
    let m = w.len();
    let pos: Vec<f64> = w.iter().map(|&z| turns(z)).collect();
    let in_arc = |start: f64, x: f64| (x - start).rem_euclid(1.0) <= 1.0 / 3.0 + 1e-12;
    let start = pos
        .iter()
        .copied()
        .max_by_key(|&s| pos.iter().filter(|&&x| in_arc(s, x)).count())
        .expect("nonempty");
    let mid = start + 1.0 / 6.0;
    let eps = 1.0 / (100.0 * m as f64);
    let ks = (0..m)
        .map(|j| {
            let x = turns(zeta[j]);
            if in_arc(start, pos[j]) {
                return_time(x, eps)
            } else {
                enter_half(pos[j] - mid, x)
            }
        })
        .collect();
    Ok(ks)
}

/// sum_j zeta_j^{k_j} w_j.
pub fn rotated_sum(w: &[Complex64], zeta: &[Complex64], k: &[u64]) -> Complex64 {
    w.iter().zip(zeta).zip(k).map(|((&a, &z), &e)| a * cis_turns(turns(z) * e as f64)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_term() {
        let k = rotation_exponents(&[Complex64::new(1.0, 0.0)], &[Complex64::new(-1.0, 0.0)]).unwrap();
        assert_eq!(k, vec![2]);
        assert!(rotation_exponents(&[Complex64::new(1.0, 0.0)], &[Complex64::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(1..=100);
            let w: Vec<Complex64> = (0..m).map(|_| cis_turns(rng.gen())).collect();
            let zeta: Vec<Complex64> = (0..m)
                .map(|_| if rng.gen_bool(0.5) { cis_turns(rng.gen_range(1..12) as f64 / 12.0) } else { cis_turns(rng.gen_range(1e-4..1.0)) })
                .collect();
            let k = rotation_exponents(&w, &zeta).unwrap();
            assert!(k.iter().all(|&e| e >= 1));
            assert!(rotated_sum(&w, &zeta, &k).norm() >= m as f64 / 7.0);
        }
    }
}
