//! Arbitrary-precision arithmetic primitives shared by every engine above.

mod bernoulli;
mod factor;
pub mod linalg;
mod poly;
mod rational;

pub use bernoulli::bernoulli;
pub use factor::{factorize, is_prime, FACTORIZATION_BOUND};
pub use poly::MultiPoly;
pub use rational::{binomial, ceil_nth_root, floor_nth_root, multinomial, nth_root_upper_bound, Rat};
