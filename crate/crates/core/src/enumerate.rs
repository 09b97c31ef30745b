//! Enumeration of monic and irreducible polynomials in lexicographic order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Iterator over the monics of one degree in a range of offsets within that degree.
pub struct Monics<'a> {
    f: &'a Field,
    sizes: Vec<u32>,
    current: Poly,
    remaining: u64,
}

impl Iterator for Monics<'_> {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.current.clone();
        if self.remaining > 0 {
            let q = self.f.q();
            let mut coeffs = std::mem::take(&mut self.current).into_coeffs();
            for (i, s) in self.sizes.iter_mut().enumerate() {
                *s += 1;
                if *s < q {
                    coeffs[i] = self.f.elem_of_size(*s);
                    break;
                }
                *s = 0;
                coeffs[i] = 0;
            }
            self.current = Poly::from_coeffs(coeffs);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// q^n, or an overflow error.
pub fn monic_count(q: u32, n: usize) -> Result<u64> {
    (q as u64).checked_pow(n as u32).ok_or_else(|| Error::Overflow(format!("{q}^{n}")))
}

/// Monics G of degree n with offsets `start..end` in lexicographic order, where offset
/// `j` is <G> - <t^n>.
pub fn monics_in_range(f: &Field, n: usize, start: u64, end: u64) -> Monics<'_> {
    let total = monic_count(f.q(), n).expect("degree within u64 range");
    let end = end.min(total);
    let start = start.min(end);
    let q = f.q() as u64;
    let mut sizes = Vec::with_capacity(n);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut j = start;
    for _ in 0..n {
        let s = (j % q) as u32;
        sizes.push(s);
        coeffs.push(f.elem_of_size(s));
        j /= q;
    }
    coeffs.push(1);
    Monics { f, sizes, current: Poly::from_coeffs(coeffs), remaining: end - start }
}

pub fn monics_of_degree(f: &Field, n: usize) -> Monics<'_> {
    monics_in_range(f, n, 0, u64::MAX)
}

/// All monics of degree at most n, by degree then index.
pub fn monics_up_to(f: &Field, n: usize) -> impl Iterator<Item = Poly> + '_ {
    (0..=n).flat_map(move |d| monics_of_degree(f, d))
}

/// |P_n| from the necklace formula (1/n) sum_{d|n} mu(d) q^{n/d}.
pub fn irreducible_count(q: u32, n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut s: i128 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            let mu = crate::arith::mobius_int(d as u64);
            if mu != 0 {
                s += mu as i128 * (q as i128).pow((n / d) as u32);
            }
        }
    }
    (s / n as i128) as u128
}

/// Monic irreducibles of degree n in lexicographic order.
///
/// Results are memoised per field and, when the field has a cache directory, persisted.
pub fn irreducibles_of_degree(f: &Field, n: usize) -> Arc<Vec<Poly>> {
    if let Some(v) = f.irr_memo.lock().expect("memo lock").get(&n) {
        return v.clone();
    }
    let list = crate::cache::load(f, n)
        .filter(|v| v.len() as u128 == irreducible_count(f.q(), n))
        .unwrap_or_else(|| {
            let v = compute_irreducibles(f, n);
            crate::cache::store(f, n, &v);
            v
        });
    let list = Arc::new(list);
    f.irr_memo.lock().expect("memo lock").insert(n, list.clone());
    list
}

fn compute_irreducibles(f: &Field, n: usize) -> Vec<Poly> {
    if n == 0 {
        return Vec::new();
    }
    monics_of_degree(f, n)
        .filter(|g| crate::factor::is_irreducible(f, g).expect("monic input"))
        .collect()
}

/// All monic irreducibles of degree at most n.
pub fn irreducibles_up_to(f: &Field, n: usize) -> Vec<Poly> {
    (1..=n).flat_map(|d| irreducibles_of_degree(f, d).as_ref().clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;
    use crate::lex::{lex_index, monic_base};

    #[test]
    fn counts() {
        let f3 = FieldConfig::prime(3).build().unwrap();
        assert_eq!(monics_of_degree(&f3, 3).count(), 27);
        let f2 = FieldConfig::prime(2).build().unwrap();
        assert_eq!(irreducibles_of_degree(&f2, 3).len(), 2);
        assert_eq!(*irreducibles_of_degree(&f2, 2), vec![Poly::from_coeffs(vec![1, 1, 1])]);
        assert_eq!(irreducible_count(2, 30), 35_790_267);
    }

    #[test]
    fn lex_order_and_ranges() {
        let f = FieldConfig::for_q(4).unwrap().with_order(crate::field::ElementOrder::Generator).build().unwrap();
        let base = monic_base(&f, 3).unwrap();
        for (j, g) in monics_of_degree(&f, 3).enumerate() {
            assert_eq!(lex_index(&f, &g).unwrap(), base + j as u64);
        }
        let mid: Vec<Poly> = monics_in_range(&f, 3, 10, 20).collect();
        let all: Vec<Poly> = monics_of_degree(&f, 3).collect();
        assert_eq!(mid, all[10..20]);
    }
}
