//! Residue rings F_q[t]/Q and their unit groups.

use std::sync::Arc;

use super::group::{decompose, Decomposition, NONE};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lex::lex_cmp;
use crate::poly::Poly;

/// Residues modulo a monic Q, coded as `sum c_i q^i` over raw element indices.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    field: Arc<Field>,
    modulus: Poly,
    deg: usize,
    size: u64,
}

impl ResidueRing {
    pub fn new(field: Arc<Field>, modulus: Poly) -> Result<ResidueRing> {
        if modulus.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !modulus.is_monic() {
            return Err(Error::InvalidArgument("modulus must be monic".into()));
        }
        let deg = modulus.d();
        let size = (field.q() as u64)
            .checked_pow(deg as u32)
            .filter(|&s| s <= 1 << 26)
            .ok_or_else(|| Error::BudgetExceeded { needed: (field.q() as u128).pow(deg as u32), budget: 1 << 26 })?;
        Ok(ResidueRing { field, modulus, deg, size })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }
    pub fn deg(&self) -> usize {
        self.deg
    }
    /// Number of residues, q^{deg Q}.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn encode_reduced(&self, r: &Poly) -> u32 {
        let q = self.field.q() as u64;
        r.coeffs().iter().rev().fold(0u64, |acc, &c| acc * q + c as u64) as u32
    }

    pub fn encode(&self, a: &Poly) -> u32 {
        if a.coeffs().len() <= self.deg {
            return self.encode_reduced(a);
        }
        self.encode_reduced(&self.field.poly_rem(a, &self.modulus).expect("nonzero modulus"))
    }

    pub fn decode(&self, code: u32) -> Poly {
        let q = self.field.q();
        let mut c = code;
        let mut v = Vec::with_capacity(self.deg);
        for _ in 0..self.deg {
            v.push(c % q);
            c /= q;
        }
        Poly::from_coeffs(v)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.field.poly_mul(&self.decode(a), &self.decode(b));
        self.encode(&p)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.encode_reduced(&self.field.poly_add(&self.decode(a), &self.decode(b)))
    }

    pub fn is_unit(&self, code: u32) -> bool {
        if self.deg == 0 {
            return true;
        }
        self.field.poly_gcd(&self.decode(code), &self.modulus).is_one()
    }
}

/// (F_q[t]/Q)^x with a deterministic invariant-factor decomposition.
#[derive(Debug)]
pub struct UnitGroup {
    ring: ResidueRing,
    dec: Decomposition,
    generators: Vec<Poly>,
}

impl UnitGroup {
    /// Unit group of a monic Q of degree >= 1.
    pub fn new(field: Arc<Field>, modulus: &Poly) -> Result<Arc<UnitGroup>> {
        if modulus.deg().unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument("unit group of a constant modulus".into()));
        }
        Self::build(field, modulus)
    }

    /// Like [`UnitGroup::new`] but also accepts Q = 1 (the trivial group).
    pub fn build(field: Arc<Field>, modulus: &Poly) -> Result<Arc<UnitGroup>> {
        let ring = ResidueRing::new(field.clone(), modulus.clone())?;
        let identity = ring.encode(&Poly::one());
        let mut units: Vec<u32> = (0..ring.size() as u32).filter(|&c| ring.is_unit(c)).collect();
        // tie-break by lexicographic index of the representative
        units.sort_by(|&a, &b| lex_cmp(&field, &ring.decode(a), &ring.decode(b)));
        let dec = decompose(ring.size() as usize, identity, &units, |a, b| ring.mul(a, b))?;
        let generators = dec.gens.iter().map(|&g| ring.decode(g)).collect();
        Ok(Arc::new(UnitGroup { ring, dec, generators }))
    }

    pub fn field(&self) -> &Arc<Field> {
        self.ring.field()
    }
    pub fn modulus(&self) -> &Poly {
        self.ring.modulus()
    }
    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }
    /// Cyclic factor orders, descending.
    pub fn orders(&self) -> &[u64] {
        &self.dec.orders
    }
    pub fn order(&self) -> u64 {
        self.dec.size()
    }
    pub fn exponent(&self) -> u64 {
        self.dec.exponent()
    }
    pub fn decomposition(&self) -> &Decomposition {
        &self.dec
    }

    /// Mixed-radix discrete log of a residue code, `None` for non-units.
    #[inline]
    pub fn dlog_code(&self, code: u32) -> Option<u32> {
        let d = self.dec.dlog[code as usize];
        (d != NONE).then_some(d)
    }

    /// Exponent vector of `a` against the generators, `None` if not a unit.
    pub fn dlog(&self, a: &Poly) -> Option<Vec<u64>> {
        self.dlog_code(self.ring.encode(a)).map(|c| self.dec.exponents(c as u64))
    }

    /// Unit residues in code order.
    pub fn unit_codes(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.ring.size() as u32).filter(|&c| self.dec.dlog[c as usize] != NONE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;
    use crate::literal::parse_poly;

    #[test]
    fn examples() {
        let f2 = FieldConfig::prime(2).build().unwrap();
        let g = UnitGroup::new(f2.clone(), &parse_poly(&f2, "t^2+t+1").unwrap()).unwrap();
        assert_eq!(g.orders(), &[3]);
        assert_eq!(g.generators(), &[Poly::t()]);
        let g = UnitGroup::new(f2.clone(), &parse_poly(&f2, "t^2*(t+1)^2").unwrap()).unwrap();
        assert_eq!(g.orders(), &[2, 2]);
        let f3 = FieldConfig::prime(3).build().unwrap();
        let g = UnitGroup::new(f3.clone(), &Poly::t()).unwrap();
        assert_eq!(g.orders(), &[2]);
        assert!(UnitGroup::new(f3.clone(), &Poly::one()).is_err());
        assert_eq!(UnitGroup::build(f3, &Poly::one()).unwrap().order(), 1);
    }

    #[test]
    fn orders_multiply_to_phi() {
        for q in [2u32, 3, 4] {
            let f = FieldConfig::for_q(q).unwrap().build().unwrap();
            for m in crate::enumerate::monics_up_to(&f, 4).skip(1) {
                let g = UnitGroup::new(f.clone(), &m).unwrap();
                let fz = crate::factor::factor(&f, &m).unwrap();
                assert_eq!(g.order() as i128, crate::arith::phi(q, &fz));
                assert_eq!(g.orders().iter().product::<u64>(), g.order());
                for (gen, &d) in g.generators().iter().zip(g.orders()) {
                    let ring = g.ring();
                    assert!(ring.encode(&f.poly_powmod(gen, d as u128, &m)) == ring.encode(&Poly::one()));
                }
            }
        }
    }
}
