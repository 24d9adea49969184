//! Polynomial heights over lemniscates.
//!
//! For a lemniscate `L = {z : |V(z)| = r}` this crate evaluates the family of
//! heights of an integer polynomial taken against the equilibrium measure of
//! `L`: the generalized Mahler measure (closed form and quadrature), the
//! `L_p` norms and the sup norm. Around it sit exact tools (resultants,
//! cyclotomic polynomials, factorization) and brute-force verifiers for the
//! extremal, Kronecker-type and Lehmer-type statements about these heights.

pub mod coeffbox;
pub mod config;
pub mod error;
pub mod exact;
pub mod heights;
pub mod lemniscate;
pub mod numbertheory;
pub mod numeric;
pub mod polynomials;
pub mod rootfinding;
pub mod search;

pub use config::Config;
pub use error::{Error, Result};
pub use polynomials::{ComplexPolynomial, IntPolynomial};
