//! Discrepancy of completely multiplicative functions on monic polynomials over F_q.

pub mod arith;
pub mod cache;
pub mod chars;
pub mod checks;
pub mod cyclotomic;
pub mod discrepancy;
pub mod enumerate;
pub mod expsums;
pub mod error;
pub mod factor;
pub mod field;
pub mod lex;
pub mod numeric;
pub mod phase;
pub mod literal;
pub mod multfunc;
pub mod poly;
pub mod sieve;

pub use error::{Error, Result};
pub use field::{Elem, ElementOrder, Field, FieldConfig};
pub use poly::{Degree, Poly};
