//! Graded polynomial rings over F_p, twisted free modules and homogeneous maps.

pub mod free;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use free::{FreeModule, ModMatrix, Vector};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_poly_at};
pub use poly::{Poly, Ring};
