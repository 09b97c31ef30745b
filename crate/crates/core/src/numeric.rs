//! Deterministic summation helpers and small numerical utilities.

use num_complex::Complex64;
use rayon::prelude::*;

/// Sums above this many terms use compensated summation.
pub const KAHAN_THRESHOLD: usize = 10_000;

/// Fixed chunk length for parallel scans; results do not depend on the worker count.
pub const CHUNK: u64 = 1 << 14;

/// Pairwise (tree) reduction in a fixed order.
pub fn tree_sum(v: &[Complex64]) -> Complex64 {
    match v.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => v[0],
        n => {
            let (a, b) = v.split_at(n / 2);
            tree_sum(a) + tree_sum(b)
        }
    }
}

/// Kahan-compensated sum of complex terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: Complex64,
    comp: Complex64,
}

impl Kahan {
    pub fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Sum of a term sequence: plain below [`KAHAN_THRESHOLD`] terms, compensated above.
pub fn sum_terms(terms: impl Iterator<Item = Complex64>, len_hint: usize) -> Complex64 {
    if len_hint > KAHAN_THRESHOLD {
        let mut k = Kahan::default();
        terms.for_each(|x| k.add(x));
        k.value()
    } else {
        terms.sum()
    }
}

/// Sum over `0..n` computed as fixed-size chunks (in parallel) and reduced pairwise.
pub fn chunked_sum<F>(n: u64, chunk_sum: F) -> Complex64
where
    F: Fn(u64, u64) -> Complex64 + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let parts: Vec<Complex64> =
        (0..chunks).into_par_iter().map(|c| chunk_sum(c * CHUNK, ((c + 1) * CHUNK).min(n))).collect();
    tree_sum(&parts)
}

/// Least-squares slope of y against x.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Rounds a complex number to a rational integer if it is one within `tol`.
pub fn round_to_int(z: Complex64, tol: f64) -> Option<i128> {
    let r = z.re.round();
    ((z.re - r).abs() < tol && z.im.abs() < tol).then_some(r as i128)
}

/// Golden-section minimisation of a unimodal function on [a, b].
pub fn golden_min(mut a: f64, mut b: f64, iters: usize, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunked_matches_serial() {
        let f = |i: u64| Complex64::new((i as f64).sin(), 1.0 / (1.0 + i as f64));
        let n = 100_000;
        let a = chunked_sum(n, |s, e| (s..e).map(f).sum());
        let b: Complex64 = (0..n).map(f).sum();
        assert!((a - b).norm() < 1e-8);
        assert_eq!(a, chunked_sum(n, |s, e| (s..e).map(f).sum()));
    }

    #[test]
    fn slope_and_rounding() {
        let xs = [1.0, 2.0, 3.0];
        assert!((ls_slope(&xs, &[2.0, 4.0, 6.0]) - 2.0).abs() < 1e-12);
        assert_eq!(round_to_int(Complex64::new(-1.0 + 1e-12, 1e-13), 1e-9), Some(-1));
        assert_eq!(round_to_int(Complex64::new(0.5, 0.0), 1e-9), None);
        let (x, _) = golden_min(0.0, 1.0, 60, |x| (x - 0.3) * (x - 0.3));
        assert!((x - 0.3).abs() < 1e-8);
    }
}
