//! Two-digit self-affine attractors (2-attractors) in `R^d`.
//!
//! A 2-attractor is the compact set `G(M, D) = { Σ_{k≥1} M^{-k} a_k : a_k ∈ D }`
//! defined by an integer expanding matrix `M` with `|det M| = 2` and a two-digit
//! set `D`. Up to affine similarity such a set is determined by the characteristic
//! polynomial of `M`, an integer monic polynomial with free term `±2` whose roots
//! all lie outside the closed unit disc.
//!
//! This crate provides:
//!
//! * exact arithmetic on those polynomials (expansion test, Mahler measure,
//!   opposite pairing, isotropy) — [`poly`];
//! * exact integer/rational linear algebra (companion and block matrices,
//!   commuting maps, digit validation) — [`matrix`];
//! * attractor construction, symmetry and the isotropic classification —
//!   [`attractor`];
//! * contact graphs, exact Lebesgue measure and the tile verdict — [`tiling`];
//! * L2 Hölder exponents via transfer matrices — [`regularity`];
//! * the parametric families of expanding polynomials and partition counts —
//!   [`series`];
//! * exhaustive enumeration by degree with class counting — [`enumeration`];
//! * truncated-zonotope convex hulls and dilation recovery — [`zonotope`].

pub mod attractor;
pub mod enumeration;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod regularity;
pub mod series;
pub mod tiling;
pub mod zonotope;

pub use error::{Error, Result};
pub use poly::IntPolynomial;

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;
