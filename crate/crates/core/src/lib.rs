//! Exact commutative algebra over prime fields: Gröbner bases, Frobenius
//! powers and roots, test ideals, F-pure threshold and least critical
//! exponent estimates, and generic linkage.

pub mod cli;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod ideal;
pub mod ideal_io;
pub mod linkage;
pub mod monomial;
pub mod poly;
pub mod span;
pub mod thresholds;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use groebner::{groebner, Budget, GroebnerBasis};
pub use ideal::{Ideal, MaximalIdeal};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Poly, Ring};
