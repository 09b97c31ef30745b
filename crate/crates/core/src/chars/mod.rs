//! Dirichlet, short-interval and Archimedean characters, and the additive character.

pub mod additive;
pub mod dirichlet;
pub mod group;
pub mod short;
pub mod unit_group;

use std::sync::Arc;

pub use additive::{additive_char, additive_char_exact};
pub use dirichlet::{characters, induce, parse_char, DirichletChar};
pub use short::{parse_short_char, short_chars, ShortIntervalChar, TailGroup};
pub use unit_group::{ResidueRing, UnitGroup};

use crate::error::Result;
use crate::field::Field;
use crate::phase::Phase;
use crate::poly::Poly;

/// e_theta(M) = e(theta deg M).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArchimedeanTwist {
    pub theta: Phase,
}

impl ArchimedeanTwist {
    pub const TRIVIAL: ArchimedeanTwist = ArchimedeanTwist { theta: Phase::ONE };

    pub fn new(theta: Phase) -> ArchimedeanTwist {
        ArchimedeanTwist { theta }
    }

    pub fn at_degree(&self, n: usize) -> Phase {
        self.theta.pow(n as i64)
    }

    pub fn eval(&self, m: &Poly) -> Phase {
        self.at_degree(m.d())
    }

    pub fn conj(&self) -> ArchimedeanTwist {
        ArchimedeanTwist { theta: self.theta.conj() }
    }
}

pub fn unit_group(field: &Arc<Field>, modulus: &Poly) -> Result<Arc<UnitGroup>> {
    UnitGroup::new(field.clone(), modulus)
}
