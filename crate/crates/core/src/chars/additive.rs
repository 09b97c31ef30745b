//! The additive character e_F(A/Q) = e(tr(a_{-1}) / p).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::phase::{turns_to_complex, RootOfUnity};
use crate::poly::Poly;

/// tr(a_{-1}) in 0..p, where a_{-1} is the t^{-1} coefficient of the Laurent expansion of A/Q.
pub fn residue_trace(f: &Field, a: &Poly, q: &Poly) -> Result<u32> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = q.d();
    if n == 0 {
        return Ok(0);
    }
    let r = f.poly_rem(a, q)?;
    // A/Q = R/Q + polynomial; leading term of R/Q at t^{-1} is r_{n-1} / lead(Q)
    let lead_inv = f.inv(q.lead()).expect("nonzero leading coefficient");
    Ok(f.trace(f.mul(r.coeff(n - 1), lead_inv)))
}

pub fn additive_char_exact(f: &Field, a: &Poly, q: &Poly) -> Result<RootOfUnity> {
    Ok(RootOfUnity::new(residue_trace(f, a, q)? as i64, f.p() as u64))
}

pub fn additive_char(f: &Field, a: &Poly, q: &Poly) -> Result<Complex64> {
    Ok(turns_to_complex(residue_trace(f, a, q)? as u64, f.p() as u64))
}
