//! Lyubeznik numbers of projective schemes in positive characteristic.

pub mod cli;
pub mod error;
pub mod ext;
pub mod frobenius;
pub mod groebner;
pub mod homology;
pub mod linalg;
pub mod polyring;
pub mod table;
pub mod veronese;

pub use error::{Error, Result};
