//! Finite graded rings given by generators and rewrite rules, top-degree
//! pairings against a calibrated fundamental class, and the polarization
//! dictionary between divisor power forms and monomial value tables.

mod mumford;
mod presentation;
mod table;

pub use mumford::{
    derived_lambda_presentation, genus3_lambda_ring, genus4_lambda_ring,
    genus4_lambda_ring_dim10, mumford_reduce,
};
pub use presentation::{Generator, PairingScale, RingPresentation, Rule};
pub use table::MonomialTable;

