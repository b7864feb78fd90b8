//! Exact certificates of infinitesimal rigidity for nonnegative matrix
//! factorizations, together with the combinatorics of their zero patterns.

pub mod cone;
pub mod cpr;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod io;
pub mod patterns;
pub mod realize;
pub mod rigidity;

pub use error::{Error, Factor, Result};
pub use exactlin::{Rational, RationalMatrix, RationalVector};
