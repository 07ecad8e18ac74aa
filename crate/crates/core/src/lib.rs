//! Exact intersection arithmetic on moduli spaces of stable curves.
//!
//! Everything here runs over arbitrary-precision rationals; no floating point
//! enters any computation (a float appears only when a caller explicitly asks
//! for a decimal rendering of an exact result). The crate has three layers:
//!
//! * [`exact`]: rationals, sparse multivariate polynomials, Bernoulli
//!   numbers, integer factorization, and rational linear algebra.
//! * Geometry engines: [`chowring`] (finite graded ring presentations and
//!   top-degree pairings), [`nefcone`] (inequality generation and extremal
//!   ray enumeration by double description), [`integrality`] (divisibility
//!   analysis of polynomial values on residue lattices).
//! * Applications: [`ampleness`] (very-ampleness divisibility chains and
//!   minimum embedding degrees in genus 2 and 3) and [`lambdanum`]
//!   (hyperelliptic degrees, lambda and kappa intersection numbers in genus
//!   3 and 4, and abelian-variety cross-checks).
//!
//! [`report`] carries the provenance bookkeeping: every externally sourced
//! constant is tagged `cited`, everything recomputed from scratch `derived`.

pub mod ampleness;
pub mod chowring;
mod error;
pub mod exact;
pub mod integrality;
pub mod lambdanum;
pub mod nefcone;
pub mod report;

pub use error::{Error, Result};
