//! A sieve over the monics of degree <= n: every monic G of positive degree is recorded
//! as P * M with P irreducible, so completely multiplicative functions can be tabulated
//! degree by degree without factoring.
//!
//! Monics of degree d are addressed by their offset <G> - <t^d>.

use std::sync::Arc;

use crate::enumerate::monic_count;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Hard cap on the number of monics a sieve may cover.
pub const SIEVE_BUDGET: u64 = 1 << 25;

pub struct MonicSieve {
    field: Arc<Field>,
    max_deg: usize,
    primes: Vec<Poly>,
    prime_deg: Vec<usize>,
    /// `split[d][i] = (prime id, offset of the cofactor of degree d - deg P)`.
    split: Vec<Vec<(u32, u32)>>,
}

impl MonicSieve {
    pub fn new(field: Arc<Field>, max_deg: usize) -> Result<MonicSieve> {
        let q = field.q();
        let total: u64 = (0..=max_deg).map(|d| monic_count(q, d)).sum::<Result<u64>>()?;
        if total > SIEVE_BUDGET {
            return Err(Error::BudgetExceeded { needed: total as u128, budget: SIEVE_BUDGET as u128 });
        }
        let mut primes: Vec<Poly> = Vec::new();
        let mut prime_deg = Vec::new();
        let mut split = vec![vec![(0u32, 0u32)]];
        let mut buf = Vec::new();
        for d in 1..=max_deg {
            let size = monic_count(q, d)? as usize;
            let mut tab = vec![(u32::MAX, 0u32); size];
            for (id, p) in primes.iter().enumerate() {
                let e = prime_deg[id];
                let mut m = vec![0u32; d - e + 1];
                m[d - e] = 1;
                for j in 0..monic_count(q, d - e)? as u32 {
                    if j > 0 {
                        step_odometer(&field, &mut m[..d - e]);
                    }
                    mul_into(&field, p.coeffs(), &m, &mut buf);
                    let off = offset(&field, &buf) as usize;
                    if tab[off].0 == u32::MAX {
                        tab[off] = (id as u32, j);
                    }
                }
            }
            // the survivors are the irreducibles of degree d, already in lexicographic order
            let mut coeffs = vec![0u32; d + 1];
            coeffs[d] = 1;
            for (off, slot) in tab.iter_mut().enumerate() {
                if off > 0 {
                    step_odometer(&field, &mut coeffs[..d]);
                }
                if slot.0 == u32::MAX {
                    *slot = (primes.len() as u32, 0);
                    primes.push(Poly::from_coeffs(coeffs.clone()));
                    prime_deg.push(d);
                }
            }
            split.push(tab);
        }
        Ok(MonicSieve { field, max_deg, primes, prime_deg, split })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn max_deg(&self) -> usize {
        self.max_deg
    }
    /// Irreducibles of degree <= max_deg, by degree then lexicographic index.
    pub fn primes(&self) -> &[Poly] {
        &self.primes
    }
    pub fn prime_deg(&self, id: usize) -> usize {
        self.prime_deg[id]
    }
    pub fn split(&self, d: usize) -> &[(u32, u32)] {
        &self.split[d]
    }

    /// Values of a completely multiplicative function on M_d for every d <= max_deg,
    /// from its values at the irreducibles (indexed like [`Self::primes`]).
    pub fn tabulate<T: Copy>(&self, prime_vals: &[T], one: T, mul: impl Fn(T, T) -> T) -> Vec<Vec<T>> {
        let mut out: Vec<Vec<T>> = vec![vec![one]];
        for d in 1..=self.max_deg {
            let row: Vec<T> = self.split[d]
                .iter()
                .map(|&(pid, cof)| {
                    let e = self.prime_deg[pid as usize];
                    mul(prime_vals[pid as usize], out[d - e][cof as usize])
                })
                .collect();
            out.push(row);
        }
        out
    }
}

/// Offset of a monic (given by its full coefficient vector) within its degree.
pub fn offset(f: &Field, coeffs: &[u32]) -> u64 {
    let q = f.q() as u64;
    coeffs[..coeffs.len() - 1].iter().rev().fold(0, |acc, &c| acc * q + f.size_of(c) as u64)
}

fn step_odometer(f: &Field, digits: &mut [u32]) {
    let q = f.q();
    for c in digits.iter_mut() {
        let s = f.size_of(*c) + 1;
        if s < q {
            *c = f.elem_of_size(s);
            return;
        }
        *c = f.elem_of_size(0);
    }
}

fn mul_into(f: &Field, a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    out.resize(a.len() + b.len() - 1, 0);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{irreducibles_of_degree, monics_of_degree};
    use crate::field::{ElementOrder, FieldConfig};

    #[test]
    fn primes_and_splits() {
        for cfg in [FieldConfig::prime(2), FieldConfig::prime(3), FieldConfig::for_q(4).unwrap()] {
            let f = cfg.build().unwrap();
            let s = MonicSieve::new(f.clone(), 6).unwrap();
            for d in 1..=6 {
                let ps: Vec<&Poly> = s.primes().iter().filter(|p| p.d() == d).collect();
                let expect = irreducibles_of_degree(&f, d);
                assert_eq!(ps.len(), expect.len());
                assert!(ps.iter().zip(expect.iter()).all(|(a, b)| *a == b));
                let mons: Vec<Poly> = monics_of_degree(&f, d).collect();
                for (g, &(pid, cof)) in mons.iter().zip(s.split(d)) {
                    let p = &s.primes()[pid as usize];
                    let m: Vec<Poly> = monics_of_degree(&f, d - p.d()).collect();
                    assert_eq!(&f.poly_mul(p, &m[cof as usize]), g);
                }
            }
        }
    }

    #[test]
    fn other_element_order() {
        let f = FieldConfig::prime(5).with_order(ElementOrder::Generator).build().unwrap();
        let s = MonicSieve::new(f.clone(), 3).unwrap();
        let ones = s.tabulate(&vec![1u64; s.primes().len()], 1, |a, b| a * b);
        assert_eq!(ones[3].len(), 125);
        let omega = s.tabulate(&vec![1u32; s.primes().len()], 0, |a, b| a + b);
        for (g, &w) in monics_of_degree(&f, 3).zip(&omega[3]) {
            let fz = crate::factor::factor(&f, &g).unwrap();
            assert_eq!(w, crate::arith::big_omega(&fz));
        }
    }
}
