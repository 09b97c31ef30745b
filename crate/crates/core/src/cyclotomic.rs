//! Exact arithmetic in Z[zeta_L], elements stored reduced modulo the cyclotomic
//! polynomial Phi_L.

use std::sync::Arc;

use num_complex::Complex64;

use crate::phase::turns_to_complex;

/// Integer coefficients of Phi_n, ascending.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    assert!(n > 0);
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_poly(d);
            num = exact_div(&num, &phi_d);
        }
    }
    num
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Z[zeta_L] with reduction tables for zeta^a, 0 <= a < L.
#[derive(Debug)]
pub struct CycRing {
    l: u64,
    phi: Vec<i64>,
    powers: Vec<Vec<i128>>,
    roots: Vec<Complex64>,
}

/// An element of Z[zeta_L]: coefficients of 1, zeta, ..., zeta^{phi(L)-1}.
pub type Cyc = Vec<i128>;

impl CycRing {
    pub fn new(l: u64) -> Arc<CycRing> {
        let phi = cyclotomic_poly(l);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(l as usize);
        let mut cur = vec![0i128; deg];
        cur[0] = 1;
        for _ in 0..l {
            powers.push(cur.clone());
            // multiply by zeta and reduce the overflow coefficient
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..deg {
                    cur[i] -= top * phi[i] as i128;
                }
            }
        }
        let roots = (0..deg).map(|i| turns_to_complex(i as u64, l)).collect();
        Arc::new(CycRing { l, phi, powers, roots })
    }

    pub fn order(&self) -> u64 {
        self.l
    }
    pub fn dim(&self) -> usize {
        self.phi.len() - 1
    }
    pub fn zero(&self) -> Cyc {
        vec![0; self.dim()]
    }
    pub fn one(&self) -> Cyc {
        self.powers[0].clone()
    }
    /// zeta^a.
    pub fn root(&self, a: u64) -> Cyc {
        self.powers[(a % self.l) as usize].clone()
    }
    /// acc += c * zeta^a.
    pub fn add_root(&self, acc: &mut Cyc, a: u64, c: i128) {
        for (x, y) in acc.iter_mut().zip(&self.powers[(a % self.l) as usize]) {
            *x += c * y;
        }
    }
    pub fn add_assign(&self, acc: &mut Cyc, b: &Cyc) {
        for (x, y) in acc.iter_mut().zip(b) {
            *x += y;
        }
    }
    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    pub fn neg(&self, a: &Cyc) -> Cyc {
        a.iter().map(|x| -x).collect()
    }
    pub fn scale(&self, a: &Cyc, c: i128) -> Cyc {
        a.iter().map(|x| x * c).collect()
    }
    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let d = self.dim();
        let mut out = vec![0i128; d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let p = &self.powers[(i + j) % self.l as usize];
                for k in 0..d {
                    out[k] += x * y * p[k];
                }
            }
        }
        out
    }
    /// a * zeta^s.
    pub fn mul_root(&self, a: &Cyc, s: u64) -> Cyc {
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                self.add_root(&mut out, i as u64 + s, x);
            }
        }
        out
    }
    pub fn is_zero(&self, a: &Cyc) -> bool {
        a.iter().all(|&x| x == 0)
    }
    pub fn to_complex(&self, a: &Cyc) -> Complex64 {
        a.iter().zip(&self.roots).map(|(&c, r)| r * c as f64).sum()
    }
    /// Complex conjugate (zeta -> zeta^{-1}).
    pub fn conj(&self, a: &Cyc) -> Cyc {
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                self.add_root(&mut out, self.l - i as u64 % self.l, x);
            }
        }
        out
    }
}
