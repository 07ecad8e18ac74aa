//! Hyperelliptic degrees and the top lambda number in genus 3.
//!
//! Write h(g) for the intersection number of the (2g-1)-st power of the
//! Hodge class with the orbifold class of the closed hyperelliptic locus.
//! Splitting that locus along the boundary expresses h(g) through lower
//! genera: a genus-g hyperelliptic curve degenerates into hyperelliptic
//! curves of genera i and g-i glued at fixed points of the involutions, and
//! every summand is a product of two lower degrees weighted by the number
//! of gluing configurations. With the genus-1 normalization imported as a
//! seed, the whole family collapses into one recursion.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::chowring::MonomialTable;
use crate::exact::{binomial, Rat};
use crate::{Error, Result};

use super::inputs::CitedInputs;

// Degrees computed so far, shared across calls. The recursion is quadratic
// in the genus, so repeated callers would otherwise redo the whole triangle.
static CACHE: Mutex<BTreeMap<u32, Rat>> = Mutex::new(BTreeMap::new());

/// One splitting term: curves degenerating into genera i and g-i.
fn split_term(g: u32, i: u32, lower: &BTreeMap<u32, Rat>) -> Rat {
    let weight = BigInt::from(i) * (i + 1) * (g - i) * (g - i + 1);
    let gluings = binomial(2 * u64::from(g) - 2, 2 * u64::from(i) - 1);
    Rat::from(weight * gluings) * (&lower[&i] * &lower[&(g - i)])
}

/// The hyperelliptic degree h(g).
///
/// Genus 0 is rejected: the recursion is seeded at genus 1.
pub fn hyperelliptic_degree(g: u32) -> Result<Rat> {
    if g == 0 {
        return Err(Error::domain("hyperelliptic degrees are indexed by genus at least 1"));
    }
    let mut cache = CACHE
        .lock()
        .map_err(|_| Error::internal("hyperelliptic degree cache poisoned"))?;
    if !cache.contains_key(&1) {
        let seed = CitedInputs::builtin().scalar("hyperelliptic_seed_genus_one")?;
        cache.insert(1, seed.value().clone());
    }
    for n in 2..=g {
        if cache.contains_key(&n) {
            continue;
        }
        let sum: Rat = (1..n).map(|i| split_term(n, i, &cache)).sum();
        let value = Rat::new(2, 2 * i64::from(n) + 1) * sum;
        if !value.is_positive() {
            return Err(Error::internal(format!(
                "hyperelliptic degree at genus {n} came out nonpositive"
            )));
        }
        cache.insert(n, value);
    }
    Ok(cache[&g].clone())
}

/// The same degree with the sum folded: each splitting is paired with its
/// mirror image. Exists purely to guard the recursion; the two summation
/// orders must agree identically.
pub fn hyperelliptic_degree_folded(g: u32) -> Result<Rat> {
    if g == 0 {
        return Err(Error::domain("hyperelliptic degrees are indexed by genus at least 1"));
    }
    let mut lower = BTreeMap::new();
    for i in 1..g {
        lower.insert(i, hyperelliptic_degree(i)?);
    }
    if g == 1 {
        return hyperelliptic_degree(1);
    }
    let mut sum = Rat::zero();
    for i in 1..=(g - 1) / 2 {
        sum += &(Rat::from_int(2) * split_term(g, i, &lower));
    }
    if g % 2 == 0 {
        sum += &split_term(g, g / 2, &lower);
    }
    Ok(Rat::new(2, 2 * i64::from(g) + 1) * sum)
}

/// Both computations of the top lambda number on the genus-3 space.
#[derive(Clone, Debug)]
pub struct LambdaSixRoutes {
    /// Via the hyperelliptic degree h(3) and the imported divisor class of
    /// the closed hyperelliptic locus, with the boundary terms read off the
    /// intersection table.
    pub via_hyperelliptic: Rat,
    /// Read directly from the genus-3 intersection table.
    pub via_table: Rat,
}

/// Computes lambda^6 on the genus-3 space along both routes.
pub fn lambda6_m3_routes() -> Result<LambdaSixRoutes> {
    let table = MonomialTable::builtin_m3bar_topform();
    let class = CitedInputs::builtin().genus3_hyperelliptic_class();
    // h(3) expands as sum of coeff * lambda^5 * class over the combination;
    // every non-lambda term is a boundary pairing the table evaluates (to
    // zero, as it happens), leaving the lambda coefficient to divide out.
    let mut lambda_coeff = Rat::zero();
    let mut boundary = Rat::zero();
    for (name, coeff) in class.terms() {
        match name {
            "lambda" => lambda_coeff = coeff.clone(),
            "delta_0" => boundary += &(coeff * table.value(&[5, 1, 0])?),
            "delta_1" => boundary += &(coeff * table.value(&[5, 0, 1])?),
            other => {
                return Err(Error::domain(format!(
                    "unexpected class {other:?} in the genus-3 hyperelliptic combination"
                )))
            }
        }
    }
    if lambda_coeff.is_zero() {
        return Err(Error::domain(
            "the genus-3 hyperelliptic combination has no lambda term to divide out",
        ));
    }
    let via_hyperelliptic = (hyperelliptic_degree(3)? - boundary) / lambda_coeff;
    let via_table = table.value(&[6, 0, 0])?.clone();
    Ok(LambdaSixRoutes { via_hyperelliptic, via_table })
}

/// The top lambda number on the genus-3 space, with both routes required
/// to agree.
pub fn lambda6_m3() -> Result<Rat> {
    let routes = lambda6_m3_routes()?;
    if routes.via_hyperelliptic != routes.via_table {
        return Err(Error::internal(
            "the hyperelliptic route and the intersection table disagree on lambda^6",
        ));
    }
    Ok(routes.via_table)
}
