//! Poisson fields `K{f}`: the rational function field K(x, y) with bracket
//! `{x, y} = f`, over K = Q or Q(t).
//!
//! The crate covers exact arithmetic, bracket evaluation, classification of
//! flags up to isomorphism, isomorphism and automorphism searches, monomial
//! valuations with the associated height invariants, and bounded elements
//! used to build flags of infinite height.

pub mod arith;
pub mod classify;
pub mod error;
pub mod flagbounds;
pub mod isomaut;
pub mod logderiv;
pub mod poisson;
pub mod valuation;

pub use arith::{BiPoly, FactoredFlag, LinearForm, Mode, RatFunc2, Rational, Scalar, UniPoly};
pub use error::{Error, Result};
pub use poisson::PoissonField;
