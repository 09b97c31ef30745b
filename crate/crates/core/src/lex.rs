//! The lexicographic index <G> = sum <b_i> q^i and short intervals.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Lexicographic index of `g` under the field's element order.
pub fn lex_index(f: &Field, g: &Poly) -> Result<u64> {
    let q = f.q() as u64;
    let mut acc: u64 = 0;
    for &c in g.coeffs().iter().rev() {
        f.check_elem(c)?;
        acc = acc
            .checked_mul(q)
            .and_then(|a| a.checked_add(f.size_of(c) as u64))
            .ok_or_else(|| Error::Overflow(format!("lexicographic index of a degree {} polynomial", g.d())))?;
    }
    Ok(acc)
}

/// Inverse of [`lex_index`].
pub fn lex_unrank(f: &Field, mut n: u64) -> Poly {
    let q = f.q() as u64;
    let mut coeffs = Vec::new();
    while n > 0 {
        coeffs.push(f.elem_of_size((n % q) as u32));
        n /= q;
    }
    Poly::from_coeffs(coeffs)
}

/// Total order by lexicographic index, without materialising the index.
pub fn lex_cmp(f: &Field, a: &Poly, b: &Poly) -> Ordering {
    let (ca, cb) = (a.coeffs(), b.coeffs());
    ca.len().cmp(&cb.len()).then_with(|| {
        ca.iter().rev().map(|&c| f.size_of(c)).cmp(cb.iter().rev().map(|&c| f.size_of(c)))
    })
}

/// Index offset of the monics of degree n: <t^n>.
pub fn monic_base(f: &Field, n: usize) -> Result<u64> {
    (f.q() as u64)
        .checked_pow(n as u32)
        .and_then(|m| m.checked_mul(f.size_of(1) as u64))
        .ok_or_else(|| Error::Overflow(format!("q^{n}")))
}

/// Polynomials with deg(G - G0) < H, in lexicographic order.
///
/// Requires H <= deg G0. The run starts at the member of the interval divisible by t^H.
pub fn short_interval<'a>(f: &'a Field, g0: &Poly, h: usize) -> Result<impl Iterator<Item = Poly> + 'a> {
    let d = g0.deg().ok_or(Error::ZeroInput)?;
    if h > d {
        return Err(Error::InvalidArgument(format!("window H = {h} exceeds deg G0 = {d}")));
    }
    let mut top = g0.coeffs().to_vec();
    top[..h].iter_mut().for_each(|c| *c = 0);
    let base = Poly::from_coeffs(top);
    let count = (f.q() as u64).checked_pow(h as u32).ok_or_else(|| Error::Overflow(format!("q^{h}")))?;
    Ok((0..count).map(move |j| f.poly_add(&base, &lex_unrank(f, j))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ElementOrder, FieldConfig};

    #[test]
    fn index_examples() {
        let f = FieldConfig::prime(2).build().unwrap();
        assert_eq!(lex_index(&f, &Poly::zero()).unwrap(), 0);
        assert_eq!(lex_index(&f, &Poly::from_coeffs(vec![0, 1, 1])).unwrap(), 6);
    }

    #[test]
    fn generator_order_round_trip() {
        let f = FieldConfig::prime(5).with_order(ElementOrder::Generator).build().unwrap();
        for n in 0..2000 {
            assert_eq!(lex_index(&f, &lex_unrank(&f, n)).unwrap(), n);
        }
    }

    #[test]
    fn interval_rejects_wide_windows() {
        let f = FieldConfig::prime(2).build().unwrap();
        assert!(short_interval(&f, &Poly::t(), 2).is_err());
        let i1: Vec<Poly> = short_interval(&f, &Poly::monomial(1, 2), 1).unwrap().collect();
        assert_eq!(i1, vec![Poly::monomial(1, 2), Poly::from_coeffs(vec![1, 0, 1])]);
    }
}
