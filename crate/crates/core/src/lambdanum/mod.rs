//! Lambda and kappa intersection numbers in genus 3 and 4.
//!
//! The submodules are organized by technique:
//!
//! * [`hyperelliptic`]: the seeded recursion for the hyperelliptic degrees
//!   h(g) and the top lambda number on the genus-3 space.
//! * [`surfaces`]: the linear system of test-surface equations pinning down
//!   the class of the closed genus-4 hyperelliptic locus.
//! * [`m4`]: genus-4 lambda numbers obtained by restricting that class
//!   modulo everything killed by a high lambda power.
//! * [`schottky`]: symbolic Hodge-class reductions, Bernoulli
//!   proportionality degrees, and the multiple of lambda representing the
//!   Jacobian locus among principally polarized abelian fourfolds.
//! * [`kappa`]: the table of kappa monomial degrees in genus 3 and its
//!   checks, one against the divisor pipeline and one against the constant
//!   predicted by two-dimensional gravity.
//!
//! Externally sourced constants enter in exactly one place, the embedded
//! data behind [`inputs`], each carrying a citation string that names the
//! claim being imported. Everything else is recomputed from scratch.

pub mod hyperelliptic;
pub mod inputs;
pub mod kappa;
pub mod m4;
pub mod schottky;
pub mod surfaces;

pub use hyperelliptic::{hyperelliptic_degree, lambda6_m3, LambdaSixRoutes};
pub use kappa::{witten_check, witten_formula, KappaTable, WittenCheck};
pub use m4::{lambda9_m4, RestrictedClass};
pub use schottky::{lambda3_cubed, proportionality, schottky_multiple, SchottkyMultiple};
pub use surfaces::{solve_test_surfaces, SolvedCoefficients};
