//! Exact computer algebra for graded polynomial rings in characteristic `p`.
//!
//! The coefficient field is `k = F_p(t1..tm)`, which is not semi-perfect once
//! `m ≥ 1`. On top of it the crate provides the standard F-factorization
//! `(φ, σ)` of the Frobenius map, Hasse derivatives and the level
//! filtration, the `k^p`-semilinear decompositions that decide membership in
//! `im(σ) + Σ ε_j im(φ)`, bounded-coefficient subrings, and a finitely
//! supported model of the Hahn field `F_p((Γ))`.
//!
//! Polynomials are generic over the [`Coefficient`] trait; [`XPoly`] and
//! [`PrimeXPoly`] fix the coefficient field.

pub mod admissible;
pub mod bounded;
pub mod demo;
pub mod error;
pub mod fields;
pub mod frobfactor;
pub mod hahn;
pub mod hasse;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod random;
pub mod scalar;

pub use error::{Error, FieldError, ParseError};
pub use fields::{FieldCtx, RatFunc, TPoly};
pub use frobfactor::Level;
pub use hahn::{GammaExp, HahnElement};
pub use hasse::HasseDerivative;
pub use poly::{Monomial, Poly};
pub use scalar::{Coefficient, Fp, Prime};

/// Polynomials over `k = F_p(t1..tm)`: the desk-scale model of `R`.
pub type XPoly = Poly<RatFunc>;

/// Polynomials over the prime field.
pub type PrimeXPoly = Poly<Fp>;
