//! Invariant-factor decomposition of a small finite abelian group given by a
//! multiplication closure on element ids.

use crate::error::{Error, Result};

pub const NONE: u32 = u32::MAX;

/// G = <g_1> x ... x <g_r> with discrete logs stored as mixed-radix codes
/// (first coordinate fastest).
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub gens: Vec<u32>,
    pub orders: Vec<u64>,
    /// element id -> mixed-radix code, or [`NONE`] for ids outside the group.
    pub dlog: Vec<u32>,
    /// mixed-radix code -> element id.
    pub elem_of_code: Vec<u32>,
}

impl Decomposition {
    pub fn size(&self) -> u64 {
        self.elem_of_code.len() as u64
    }

    /// Exponent vector of a mixed-radix code.
    pub fn exponents(&self, mut code: u64) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&d| {
                let e = code % d;
                code /= d;
                e
            })
            .collect()
    }

    pub fn code_of(&self, exps: &[u64]) -> u64 {
        exps.iter().zip(&self.orders).rev().fold(0, |acc, (&e, &d)| acc * d + e % d)
    }

    /// Exponent of the group (largest cyclic factor).
    pub fn exponent(&self) -> u64 {
        self.orders.first().copied().unwrap_or(1)
    }
}

/// Greedy decomposition: repeatedly take the first element (in `elems` order) of
/// maximal order modulo the subgroup found so far and correct it by a lift so that
/// the new cyclic factor meets that subgroup trivially.
///
/// `space` bounds the element ids; `elems` lists the group elements in tie-break order.
pub fn decompose(space: usize, identity: u32, elems: &[u32], mul: impl Fn(u32, u32) -> u32) -> Result<Decomposition> {
    let n = elems.len();
    let mut dlog = vec![NONE; space];
    dlog[identity as usize] = 0;
    let mut elem_of_code = vec![identity];
    let mut gens = Vec::new();
    let mut orders: Vec<u64> = Vec::new();

    let pow = |x: u32, mut e: u64| -> u32 {
        let (mut base, mut acc) = (x, identity);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };

    while elem_of_code.len() < n {
        // order of each element modulo the current subgroup
        let mut best: Option<(u32, u64, u32)> = None;
        for &x in elems {
            if dlog[x as usize] != NONE {
                continue;
            }
            let (mut y, mut m) = (x, 1u64);
            while dlog[y as usize] == NONE {
                y = mul(y, x);
                m += 1;
                if m as usize > n {
                    return Err(Error::Internal("group multiplication is not closed".into()));
                }
            }
            if best.is_none_or(|(_, bm, _)| m > bm) {
                best = Some((x, m, y));
            }
        }
        let (x, m, y) = best.expect("some element lies outside the subgroup");
        // x^m = prod g_j^{s_j}; divide each s_j by m and strip it off
        let s = exponents_with(&orders, dlog[y as usize] as u64);
        let mut corr = identity;
        for (j, &sj) in s.iter().enumerate() {
            if sj % m != 0 {
                return Err(Error::Internal(format!("lift correction failed: {sj} not divisible by {m}")));
            }
            let inv_exp = (orders[j] - sj / m % orders[j]) % orders[j];
            corr = mul(corr, pow(gens[j], inv_exp));
        }
        let g = mul(x, corr);
        if pow(g, m) != identity {
            return Err(Error::Internal("corrected generator has the wrong order".into()));
        }
        let weight = elem_of_code.len() as u64;
        let old = elem_of_code.clone();
        let mut gi = identity;
        for i in 1..m {
            gi = mul(gi, g);
            for (c, &h) in old.iter().enumerate() {
                let e = mul(h, gi);
                if dlog[e as usize] != NONE {
                    return Err(Error::Internal("new cyclic factor meets the subgroup".into()));
                }
                dlog[e as usize] = (c as u64 + i * weight) as u32;
                elem_of_code.push(e);
            }
        }
        gens.push(g);
        orders.push(m);
    }
    Ok(Decomposition { gens, orders, dlog, elem_of_code })
}

fn exponents_with(orders: &[u64], mut code: u64) -> Vec<u64> {
    orders
        .iter()
        .map(|&d| {
            let e = code % d;
            code /= d;
            e
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn_units(n: u32) -> Decomposition {
        let elems: Vec<u32> = (1..n).filter(|a| num_integer::gcd(*a, n) == 1).collect();
        decompose(n as usize, 1, &elems, |a, b| a * b % n).unwrap()
    }

    #[test]
    fn integer_unit_groups() {
        assert_eq!(zn_units(7).orders, vec![6]);
        assert_eq!(zn_units(8).orders, vec![2, 2]);
        assert_eq!(zn_units(15).orders, vec![4, 2]);
        assert_eq!(zn_units(16).orders, vec![4, 2]);
        let d = zn_units(24);
        assert_eq!(d.orders, vec![2, 2, 2]);
        for (code, &e) in d.elem_of_code.iter().enumerate() {
            assert_eq!(d.dlog[e as usize], code as u32);
        }
    }
}
