//! Exact-arithmetic numerics for Q-Fano threefolds.
//!
//! A Q-Fano threefold is a projective threefold with terminal Q-factorial
//! singularities, Picard rank 1 and ample anticanonical divisor. Its
//! numerical shadow is a triple `(q, B, A^3)`: the Fano index `q` with
//! `-K = qA`, the basket `B` of terminal cyclic quotient singularities
//! `1/r(1,a,r-a)`, and the degree `A^3`. This crate computes with those
//! shadows:
//!
//! - [`basket`]: baskets and basket-level functionals (Kawamata sum,
//!   Shokurov difficulty, torsion criterion, Kawamata blowup transform);
//! - [`rr`]: orbifold Riemann-Roch, `chi(O(kA))` and `dim |kA|`;
//! - [`enumerate`]: exhaustive enumeration of numerical candidates for a
//!   given index;
//! - [`link`]: the Diophantine system attached to a Sarkisov link out of a
//!   blowup of a candidate, with its filter ladder;
//! - [`wps`]: weighted projective hypersurface invariants used to check
//!   model varieties against candidates.
//!
//! All arithmetic is exact over `i128` rationals; no floating point is used
//! anywhere.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod basket;
pub mod enumerate;
pub mod link;
pub mod rational;
pub mod rr;
pub mod wps;

pub use basket::{Basket, BasketPoint, QuotientPoint};
pub use enumerate::{enumerate_candidates, FanoCandidate, FilterConfig};
pub use rational::Rational;
pub use rr::FanoNumerics;
