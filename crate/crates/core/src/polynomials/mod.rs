//! Exact and floating polynomial arithmetic.

mod complex;
mod cyclotomic;
mod factor;
mod int;
mod text;

pub use complex::ComplexPolynomial;
pub use cyclotomic::{cyclotomic, divisors, euler_phi};
pub use factor::{factor, is_irreducible, Factorization};
pub use int::IntPolynomial;
