//! Points on the unit circle as rotations e(x) = exp(2 pi i x).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Global tolerance for floating-point equality of unit complex numbers.
pub const TOL: f64 = 1e-9;

/// e(a/m) with 0 <= a < m and gcd(a, m) = 1 (or a = 0, m = 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity { num: 1, den: 2 };

    /// e(a/m), reduced. Panics if m = 0.
    pub fn new(a: i64, m: u64) -> RootOfUnity {
        assert!(m > 0, "root of unity with zero denominator");
        let a = (a as i128).rem_euclid(m as i128) as u64;
        let g = a.gcd(&m);
        if a == 0 {
            return RootOfUnity::ONE;
        }
        RootOfUnity { num: a / g, den: m / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }
    pub fn den(&self) -> u64 {
        self.den
    }
    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }
    pub fn is_one(&self) -> bool {
        self.num == 0
    }
    pub fn turns(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_complex(&self) -> Complex64 {
        turns_to_complex(self.num, self.den)
    }

    pub fn mul(self, o: RootOfUnity) -> RootOfUnity {
        let l = self.den.lcm(&o.den);
        let a = (self.num as u128 * (l / self.den) as u128 + o.num as u128 * (l / o.den) as u128) % l as u128;
        RootOfUnity::new(a as i64, l)
    }

    pub fn conj(self) -> RootOfUnity {
        RootOfUnity::new(-(self.num as i64), self.den)
    }

    pub fn pow(self, e: i64) -> RootOfUnity {
        let a = (self.num as i128 * e as i128).rem_euclid(self.den as i128);
        RootOfUnity::new(a as i64, self.den)
    }

    /// Numerator over a denominator that is a multiple of `den`.
    pub fn numerator_over(&self, l: u64) -> Option<u64> {
        l.is_multiple_of(self.den).then(|| self.num * (l / self.den))
    }
}

/// e(a/m) computed from the reduced angle, exact at the quarter turns.
pub fn turns_to_complex(a: u64, m: u64) -> Complex64 {
    let a = a % m;
    if a == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 4 * a == m {
        return Complex64::new(0.0, 1.0);
    }
    if 2 * a == m {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * a == 3 * m {
        return Complex64::new(0.0, -1.0);
    }
    let (s, c) = (std::f64::consts::TAU * a as f64 / m as f64).sin_cos();
    Complex64::new(c, s)
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
        let (a, m) = s.trim().split_once('/').ok_or_else(|| bad("expected a/m"))?;
        let a: i64 = a.trim().parse().map_err(|_| bad("bad numerator"))?;
        let m: u64 = m.trim().parse().map_err(|_| bad("bad denominator"))?;
        if m == 0 {
            return Err(bad("zero denominator"));
        }
        Ok(RootOfUnity::new(a, m))
    }
}

/// A unit complex number: an exact rational rotation or a binary64 rotation in [0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Phase {
    Rational(RootOfUnity),
    Real(f64),
}

impl Phase {
    pub const ONE: Phase = Phase::Rational(RootOfUnity::ONE);
    pub const MINUS_ONE: Phase = Phase::Rational(RootOfUnity::MINUS_ONE);

    pub fn rational(a: i64, m: u64) -> Phase {
        Phase::Rational(RootOfUnity::new(a, m))
    }

    pub fn real(turns: f64) -> Phase {
        Phase::Real(turns.rem_euclid(1.0))
    }

    pub fn turns(&self) -> f64 {
        match self {
            Phase::Rational(r) => r.turns(),
            Phase::Real(x) => *x,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Phase::Rational(r) => r.to_complex(),
            Phase::Real(x) => {
                let (s, c) = (std::f64::consts::TAU * x).sin_cos();
                Complex64::new(c, s)
            }
        }
    }

    pub fn as_rational(&self) -> Option<RootOfUnity> {
        match self {
            Phase::Rational(r) => Some(*r),
            Phase::Real(_) => None,
        }
    }

    pub fn mul(self, o: Phase) -> Phase {
        match (self, o) {
            (Phase::Rational(a), Phase::Rational(b)) => Phase::Rational(a.mul(b)),
            _ => Phase::real(self.turns() + o.turns()),
        }
    }

    pub fn conj(self) -> Phase {
        match self {
            Phase::Rational(r) => Phase::Rational(r.conj()),
            Phase::Real(x) => Phase::real(-x),
        }
    }

    pub fn pow(self, e: i64) -> Phase {
        match self {
            Phase::Rational(r) => Phase::Rational(r.pow(e)),
            Phase::Real(x) => Phase::real(x * e as f64),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Phase::Rational(r) => r.is_one(),
            Phase::Real(x) => circle_distance(*x, 0.0) < TOL,
        }
    }

    /// Equality: exact for rational pairs, within [`TOL`] turns otherwise.
    pub fn approx_eq(&self, o: &Phase) -> bool {
        match (self, o) {
            (Phase::Rational(a), Phase::Rational(b)) => a == b,
            _ => circle_distance(self.turns(), o.turns()) < TOL,
        }
    }
}

/// Distance between two rotations measured in turns, in [0, 1/2].
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Rational(r) => write!(f, "{r}"),
            Phase::Real(x) => write!(f, "{x:.17}"),
        }
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// `a/m` for an exact rotation, a decimal for a binary64 rotation in turns.
    fn from_str(s: &str) -> Result<Self> {
        if s.contains('/') {
            return s.parse().map(Phase::Rational);
        }
        let x: f64 = s.trim().parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad rotation {s:?}") })?;
        if !x.is_finite() {
            return Err(Error::Parse { pos: 0, msg: format!("bad rotation {s:?}") });
        }
        Ok(Phase::real(x))
    }
}

/// A value of a multiplicative function: zero or a unit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Zero,
    Unit(Phase),
}

impl Value {
    pub const ONE: Value = Value::Unit(Phase::ONE);

    pub fn mul(self, o: Value) -> Value {
        match (self, o) {
            (Value::Unit(a), Value::Unit(b)) => Value::Unit(a.mul(b)),
            _ => Value::Zero,
        }
    }
    pub fn pow(self, e: u32) -> Value {
        match self {
            Value::Zero if e > 0 => Value::Zero,
            Value::Zero => Value::ONE,
            Value::Unit(p) => Value::Unit(p.pow(e as i64)),
        }
    }
    pub fn conj(self) -> Value {
        match self {
            Value::Zero => Value::Zero,
            Value::Unit(p) => Value::Unit(p.conj()),
        }
    }
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Value::Zero => Complex64::new(0.0, 0.0),
            Value::Unit(p) => p.to_complex(),
        }
    }
    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Zero)
    }
    pub fn phase(&self) -> Option<Phase> {
        match self {
            Value::Zero => None,
            Value::Unit(p) => Some(*p),
        }
    }
}

impl From<RootOfUnity> for Value {
    fn from(r: RootOfUnity) -> Self {
        Value::Unit(Phase::Rational(r))
    }
}

impl From<Phase> for Value {
    fn from(p: Phase) -> Self {
        Value::Unit(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_arithmetic() {
        let a = RootOfUnity::new(2, 6);
        assert_eq!((a.num(), a.den()), (1, 3));
        assert_eq!(a.mul(a).mul(a), RootOfUnity::ONE);
        assert_eq!(RootOfUnity::new(-1, 4), RootOfUnity::new(3, 4));
        assert_eq!(a.conj(), RootOfUnity::new(2, 3));
        assert_eq!(RootOfUnity::MINUS_ONE.to_complex(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn literals() {
        assert_eq!("1/2".parse::<RootOfUnity>().unwrap(), RootOfUnity::MINUS_ONE);
        assert_eq!("0/1".parse::<RootOfUnity>().unwrap(), RootOfUnity::ONE);
        assert!("1/0".parse::<RootOfUnity>().is_err());
        assert_eq!(RootOfUnity::new(5, 12).to_string(), "5/12");
        assert!(matches!("0.25".parse::<Phase>().unwrap(), Phase::Real(x) if x == 0.25));
    }

    #[test]
    fn mixed_phases() {
        let p = Phase::rational(1, 4).mul(Phase::real(0.25));
        assert!(p.approx_eq(&Phase::MINUS_ONE));
        assert!(Phase::real(0.999_999_999_999).is_one());
    }
}
