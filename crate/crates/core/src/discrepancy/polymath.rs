//! Depth-first search for +-1 completely multiplicative functions with bounded long sums.
//!
//! f(P) = -1 on the first j_d irreducibles of degree d (lexicographic order) and +1 on the
//! rest. With pi(d) irreducibles of degree d,
//!   alpha_d = sum over deg G = d of Lambda(G) f(G)
//!           = d (pi(d) - 2 j_d) + sum over e | d, e < d of e (pi(e) or pi(e) - 2 j_e by parity of d/e),
//! and beta_d = sum over deg G = d of f(G) follows from d beta_d = sum_{i=1}^d alpha_i beta_{d-i}.

use std::sync::Arc;

use serde::Serialize;

use crate::enumerate::irreducible_count;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::multfunc::MultFn;
use crate::phase::Phase;
use crate::sieve::MonicSieve;

pub const NODE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct PolymathRecord {
    pub d: usize,
    /// irreducibles of degree d
    pub primes: i128,
    /// number of degree-d irreducibles sent to -1
    pub minus: i128,
    pub alpha: i128,
    pub beta: i128,
    /// sum of beta_i for 0 <= i <= d
    pub cumulative: i128,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolymathState {
    pub q: u32,
    pub c: i128,
    pub d_max: usize,
    pub nodes: u64,
    pub records: Vec<PolymathRecord>,
    /// least i0 with |alpha_i| < q^i for all i0 <= i <= d_max
    pub burn_in: usize,
}

struct Search {
    q: u32,
    c: i128,
    d_max: usize,
    pi: Vec<i128>,
    minus: Vec<i128>,
    alpha: Vec<i128>,
    beta: Vec<i128>,
    nodes: u64,
    node_limit: u64,
    deepest: usize,
}

impl Search {
    /// alpha_d without the d (pi(d) - 2 j_d) term.
    fn lower_alpha(&self, d: usize) -> i128 {
        (1..d)
            .filter(|e| d.is_multiple_of(*e))
            .map(|e| {
                let s = if (d / e).is_multiple_of(2) { self.pi[e] } else { self.pi[e] - 2 * self.minus[e] };
                e as i128 * s
            })
            .sum()
    }

    fn dfs(&mut self, d: usize, cum: i128) -> bool {
        if d > self.d_max {
            return true;
        }
        self.deepest = self.deepest.max(d - 1);
        let lower = self.lower_alpha(d);
        let conv: i128 = (1..d).map(|i| self.alpha[i] * self.beta[d - i]).sum();
        let rest = lower + conv;
        assert_eq!(rest % d as i128, 0, "non-integral beta at degree {d}");
        let base = self.pi[d] + rest / d as i128;
        // beta_d = base - 2j for 0 <= j <= pi(d); keep 0 <= cum + beta_d <= C
        let mut js: Vec<i128> = (0..=self.c)
            .filter_map(|target| {
                let two_j = base + cum - target;
                (two_j % 2 == 0 && (0..=2 * self.pi[d]).contains(&two_j)).then_some(two_j / 2)
            })
            .collect();
        js.sort_by_key(|&j| (cum + base - 2 * j).abs());
        for j in js {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return false;
            }
            self.minus[d] = j;
            self.alpha[d] = d as i128 * (self.pi[d] - 2 * j) + lower;
            self.beta[d] = base - 2 * j;
            if self.dfs(d + 1, cum + self.beta[d]) {
                return true;
            }
        }
        false
    }
}

fn run(q: u32, c: i128, d_max: usize, node_limit: u64) -> (Option<PolymathState>, usize, u64) {
    let pi: Vec<i128> = (0..=d_max).map(|d| if d == 0 { 0 } else { irreducible_count(q, d) as i128 }).collect();
    let mut s = Search {
        q,
        c,
        d_max,
        pi,
        minus: vec![0; d_max + 1],
        alpha: vec![0; d_max + 1],
        beta: vec![0; d_max + 1],
        nodes: 0,
        node_limit,
        deepest: 0,
    };
    s.beta[0] = 1;
    if !s.dfs(1, 1) {
        return (None, s.deepest, s.nodes);
    }
    let mut cum = 0;
    let records: Vec<PolymathRecord> = (1..=d_max)
        .map(|d| {
            cum += s.beta[d];
            PolymathRecord { d, primes: s.pi[d], minus: s.minus[d], alpha: s.alpha[d], beta: s.beta[d], cumulative: cum + 1 }
        })
        .collect();
    let qq = q as f64;
    let burn_in = records.iter().rposition(|r| r.alpha.unsigned_abs() as f64 >= qq.powi(r.d as i32)).map_or(1, |i| i + 2);
    (Some(PolymathState { q: s.q, c, d_max, nodes: s.nodes, records, burn_in }), s.deepest, s.nodes)
}

/// Runs the search with C = c_start, c_start + 1, ..., c_max, each attempt capped at
/// `node_limit` nodes, and returns the first success.
pub fn polymath_construct(q: u32, c_start: i128, c_max: i128, d_max: usize, node_limit: u64) -> Result<PolymathState> {
    if d_max == 0 || d_max > 60 {
        return Err(Error::InvalidArgument("d_max must lie in 1..=60".into()));
    }
    if q.checked_pow(d_max as u32).is_none_or(|x| x as u128 > 1 << 62) {
        return Err(Error::Overflow(format!("q^{d_max} too large for the recursion")));
    }
    let mut best = 0;
    for c in c_start.max(0)..=c_max {
        let (state, deepest, _) = run(q, c, d_max, node_limit);
        if let Some(state) = state {
            return Ok(state);
        }
        best = best.max(deepest);
    }
    Err(Error::Hypothesis(format!("no assignment with C <= {c_max}; deepest complete degree {best}")))
}

impl PolymathState {
    /// The constructed f, with values fixed on irreducibles of degree <= max_deg (+1 beyond).
    pub fn to_multfn(&self, field: &Arc<Field>, max_deg: usize) -> Result<MultFn> {
        if field.q() != self.q {
            return Err(Error::InvalidArgument("field size differs from the search".into()));
        }
        let sieve = MonicSieve::new(field.clone(), max_deg.min(self.d_max))?;
        let mut minus = Vec::new();
        let mut taken = vec![0i128; sieve.max_deg() + 1];
        for p in sieve.primes() {
            let d = p.d();
            if taken[d] < self.records[d - 1].minus {
                taken[d] += 1;
                minus.push((p.clone(), Phase::MINUS_ONE));
            }
        }
        MultFn::one(field.clone()).with_prime_values(minus)
    }

    /// For each degree in `degrees`, flips one irreducible from -1 to +1 and one from +1 to -1.
    /// The alpha_i, hence the beta_i, are unchanged.
    pub fn sign_swap(&self, field: &Arc<Field>, max_deg: usize, degrees: &[usize]) -> Result<MultFn> {
        let base = self.to_multfn(field, max_deg)?;
        let sieve = MonicSieve::new(field.clone(), max_deg.min(self.d_max))?;
        let mut changes = Vec::new();
        for &d in degrees {
            let rec = self.records.get(d.wrapping_sub(1)).filter(|_| d <= sieve.max_deg());
            let rec = rec.ok_or_else(|| Error::InvalidArgument(format!("degree {d} outside the table")))?;
            if rec.minus == 0 || rec.minus == rec.primes {
                return Err(Error::InvalidArgument(format!("degree {d} has no pair of opposite signs")));
            }
            let mut of_d = sieve.primes().iter().filter(|p| p.d() == d);
            let first = of_d.next().expect("minus > 0");
            let plus = of_d.nth(rec.minus as usize - 1).expect("minus < primes");
            changes.push((first.clone(), Phase::ONE));
            changes.push((plus.clone(), Phase::MINUS_ONE));
        }
        base.with_prime_values(changes)
    }
}

/// alpha_d and beta_d for 1 <= d <= max_deg, by enumeration of M_d.
pub fn enumerate_alpha_beta(f: &MultFn, max_deg: usize) -> Result<Vec<(i128, i128)>> {
    let sieve = MonicSieve::new(f.field().clone(), max_deg)?;
    let tables = f.degree_tables(&sieve);
    let pv: Vec<f64> = f.prime_values(sieve.primes()).iter().map(|v| v.to_complex().re).collect();
    let mut out = Vec::with_capacity(max_deg);
    for d in 1..=max_deg {
        let beta: f64 = tables[d].iter().map(|z| z.re).sum();
        let mut alpha = 0.0;
        for (p, &v) in sieve.primes().iter().zip(&pv) {
            let e = p.d();
            if d % e == 0 {
                alpha += e as f64 * v.powi((d / e) as i32);
            }
        }
        out.push((alpha.round() as i128, beta.round() as i128));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    #[test]
    fn recursion_and_enumeration() {
        let st = polymath_construct(2, 2, 4, 30, NODE_LIMIT).unwrap();
        assert!(st.c <= 4);
        for r in &st.records {
            assert!((0..=st.c).contains(&r.cumulative));
        }
        let f2 = FieldConfig::prime(2).build().unwrap();
        let f = st.to_multfn(&f2, 10).unwrap();
        let en = enumerate_alpha_beta(&f, 10).unwrap();
        for (r, (a, b)) in st.records.iter().zip(en) {
            assert_eq!((r.alpha, r.beta), (a, b), "degree {}", r.d);
        }
    }

    #[test]
    fn zeta_case() {
        // j_d = 0 everywhere is f = 1: alpha_d = beta_d = q^d
        let mut s = Search { q: 3, c: 0, d_max: 6, pi: vec![], minus: vec![0; 7], alpha: vec![0; 7], beta: vec![0; 7], nodes: 0, node_limit: NODE_LIMIT, deepest: 0 };
        s.pi = (0..=6).map(|d| if d == 0 { 0 } else { irreducible_count(3, d) as i128 }).collect();
        for d in 1..=6 {
            s.alpha[d] = d as i128 * s.pi[d] + s.lower_alpha(d);
            assert_eq!(s.alpha[d], 3i128.pow(d as u32));
        }
    }

    #[test]
    fn swaps_keep_alpha() {
        let st = polymath_construct(2, 2, 4, 12, NODE_LIMIT).unwrap();
        let f2 = FieldConfig::prime(2).build().unwrap();
        let degs: Vec<usize> = st.records.iter().filter(|r| r.d >= 5 && r.minus > 0 && r.minus < r.primes).map(|r| r.d).take(3).collect();
        let g = st.sign_swap(&f2, 10, &degs).unwrap();
        let a = enumerate_alpha_beta(&st.to_multfn(&f2, 10).unwrap(), 10).unwrap();
        assert_eq!(a, enumerate_alpha_beta(&g, 10).unwrap());
    }
}
