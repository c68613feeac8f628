//! Exact arithmetic for the local-global obstruction to realizing a
//! `*`-symmetric integer polynomial as the characteristic polynomial of a
//! semisimple isometry of an even unimodular lattice, and the realizability
//! test for Salem numbers on nonprojective K3 surfaces.
//!
//! Everything is exact: integer and rational coefficients, residues modulo
//! word-sized primes, and p-adic data carried as integers modulo `p^k`.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod hensel;
pub mod intpoly;
pub mod modp;
pub mod obstruction;
pub mod padic;
pub mod par;
pub mod salem;

pub use error::{Error, Result};
pub use intpoly::{IntPolynomial, RatPolynomial};
pub use modp::ModPolynomial;
