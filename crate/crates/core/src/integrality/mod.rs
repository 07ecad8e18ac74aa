//! Integrality analysis of rational polynomials at primes: exact residue
//! conditions, their readable simplifications, and subgroup lattices.

mod analyze;
mod condition;
mod lattice;
mod simplify;

pub use analyze::{analyze, analyze_partial, denominator_depth, q_valuation};
pub use condition::{format_form, Clause, CosetCondition, ENUMERATION_CAP};
pub use lattice::{admitted_lattice, diagonal_divisibilities, diagonal_of};
pub use simplify::{simplify, Simplified};
