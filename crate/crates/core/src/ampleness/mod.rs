//! Very-ampleness arithmetic: which multiples of an ample divisor class
//! have integral intersection numbers against the known cycle classes, and
//! the smallest projective degree those divisibilities allow.
//!
//! The genus-2 analysis in [`m2`] is a single residue computation. The
//! genus-3 analysis in [`m3`] is a chain of rescalings and class pairings;
//! the [`chain`] module holds the bookkeeping shared by both, and
//! [`minimize`] the exact lattice-point search for the minimal degree.

pub mod chain;
pub mod m2;
pub mod m3;
pub mod minimize;

pub use chain::{Basis, ChainStep, ClaimKind, Frame, Verification};
pub use minimize::{minimize_on_cone, MinimizeOutcome, MinimumDegree};
