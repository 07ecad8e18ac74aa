//! Symbolic Hodge-class reductions and abelian-variety degrees.
//!
//! The Chern classes of the sum of the Hodge bundle and its dual vanish in
//! positive degree, which forces a short list of rewrite rules among the
//! lambda classes. Reducing monomials with those rules turns several deep
//! intersection numbers into multiples of a single top lambda power, and
//! comparing against the Bernoulli proportionality degrees identifies the
//! multiple of lambda representing the Jacobian locus.

use std::sync::OnceLock;

use crate::chowring::{Generator, PairingScale, RingPresentation, Rule};
use crate::exact::{bernoulli, Rat};
use crate::{Error, Result};

use super::hyperelliptic::lambda6_m3;
use super::inputs::CitedInputs;
use super::m4::lambda9_m4;

fn genus4_ring() -> &'static RingPresentation {
    RingPresentation::builtin_mumford_m4()
}

/// The genus-3 analogue, derived the same way from the rank-3 Chern
/// identity: degree 2 gives lambda_2 = lambda_1^2 / 2, degree 4 gives
/// lambda_1 lambda_3 = lambda_1^4 / 8, degree 6 kills lambda_3^2.
fn genus3_ring() -> &'static RingPresentation {
    static P: OnceLock<RingPresentation> = OnceLock::new();
    P.get_or_init(|| {
        let gens = vec![
            Generator { name: "lambda1".into(), grade: 1 },
            Generator { name: "lambda2".into(), grade: 2 },
            Generator { name: "lambda3".into(), grade: 3 },
        ];
        let rules = vec![
            Rule { lhs: vec![0, 1, 0], rhs: vec![(vec![2, 0, 0], Rat::new(1, 2))] },
            Rule { lhs: vec![1, 0, 1], rhs: vec![(vec![4, 0, 0], Rat::new(1, 8))] },
            Rule { lhs: vec![0, 0, 2], rhs: vec![] },
        ];
        RingPresentation::from_parts(
            "hodge_g3",
            gens,
            rules,
            6,
            vec![6, 0, 0],
            Rat::one(),
            Rat::one(),
            Some(
                "Ring generated by the genus-3 Hodge classes modulo the rank-3 \
                 Chern identity, calibrated so normal forms read off the \
                 multiple of lambda1^6."
                    .into(),
            ),
        )
        .expect("genus-3 Hodge presentation is valid")
    })
}

/// Reduces lambda_3^3 to its multiple of the calibration monomial in the
/// given presentation, which must declare a generator named `lambda3`.
pub fn cube_multiple_in(ring: &RingPresentation) -> Result<Rat> {
    let cube = ring.gen_poly("lambda3")?.pow(3);
    ring.top_pairing(&cube, PairingScale::Coarse)
}

/// Reduces lambda_3^3 to its multiple of the top lambda power in genus 4.
pub fn mumford_reduce() -> Result<Rat> {
    cube_multiple_in(genus4_ring())
}

/// The analogous reduction of lambda_2 lambda_3 lambda_4 in the given
/// presentation.
pub fn product_multiple_in(ring: &RingPresentation) -> Result<Rat> {
    let product = &(&ring.gen_poly("lambda2")? * &ring.gen_poly("lambda3")?)
        * &ring.gen_poly("lambda4")?;
    ring.top_pairing(&product, PairingScale::Coarse)
}

/// The multiple of lambda_1^10 represented by the product of all four
/// lambda classes.
///
/// The product lambda_2 lambda_3 lambda_4 has weighted degree 9, so its
/// normal form is already a multiple of lambda_1^9; multiplying both sides
/// by lambda_1 gives the degree-10 statement used on the abelian side.
pub fn hodge_product_multiple() -> Result<Rat> {
    product_multiple_in(genus4_ring())
}

/// The genus-3 counterpart: the multiple of lambda_1^6 represented by
/// lambda_1 lambda_2 lambda_3.
pub fn genus3_product_multiple() -> Result<Rat> {
    let ring = genus3_ring();
    let product = &(&ring.gen_poly("lambda1")? * &ring.gen_poly("lambda2")?)
        * &ring.gen_poly("lambda3")?;
    ring.top_pairing(&product, PairingScale::Coarse)
}

/// The intersection number lambda_3^3 on the genus-4 space: the symbolic
/// multiple times the recursively computed top lambda number.
pub fn lambda3_cubed() -> Result<Rat> {
    lambda3_cubed_in(genus4_ring())
}

/// [`lambda3_cubed`] with the symbolic reduction done in the given
/// presentation instead of the built-in genus-4 one.
pub fn lambda3_cubed_in(ring: &RingPresentation) -> Result<Rat> {
    Ok(cube_multiple_in(ring)? * lambda9_m4()?)
}

/// The Bernoulli proportionality degree: the product of |B_{2i}| / (4i)
/// for i up to g. This is the degree of the product of all lambda classes
/// on the compactified moduli of abelian g-folds.
pub fn proportionality(g: u32) -> Result<Rat> {
    if g == 0 {
        return Err(Error::domain("proportionality degrees are indexed by genus at least 1"));
    }
    let mut acc = Rat::one();
    for i in 1..=g {
        acc = acc * (bernoulli(2 * i).abs() / Rat::from(4 * i64::from(i)));
    }
    Ok(acc)
}

/// The top lambda power on the compactified moduli of abelian fourfolds:
/// the proportionality degree divided by the symbolic product multiple.
pub fn lambda10_a4() -> Result<Rat> {
    lambda10_a4_in(genus4_ring())
}

/// [`lambda10_a4`] with the product reduction done in the given
/// presentation.
pub fn lambda10_a4_in(ring: &RingPresentation) -> Result<Rat> {
    Ok(proportionality(4)? / product_multiple_in(ring)?)
}

/// The multiple of lambda representing the Jacobian locus among abelian
/// fourfolds, together with the two degrees it compares.
#[derive(Clone, Debug)]
pub struct SchottkyMultiple {
    /// The pairing of the Jacobian locus with lambda^9, transported from
    /// the curve side.
    pub jacobian_pairing: Rat,
    /// lambda^10 on the abelian side.
    pub lambda10: Rat,
    /// The coarse multiple of lambda.
    pub multiple: Rat,
    /// The orbifold multiple, half the coarse one.
    pub q_multiple: Rat,
}

/// Identifies the Jacobian locus as a multiple of lambda by comparing the
/// transported top pairing against lambda^10.
pub fn schottky_multiple() -> Result<SchottkyMultiple> {
    schottky_multiple_in(genus4_ring())
}

/// [`schottky_multiple`] with the symbolic reductions done in the given
/// presentation.
pub fn schottky_multiple_in(ring: &RingPresentation) -> Result<SchottkyMultiple> {
    let jacobian_pairing = lambda9_m4()?;
    let lambda10 = lambda10_a4_in(ring)?;
    let multiple = &jacobian_pairing / &lambda10;
    if !multiple.is_integer() {
        return Err(Error::internal("the Jacobian multiple of lambda came out fractional"));
    }
    let halving = CitedInputs::builtin().scalar("torelli_double_cover_factor")?.value();
    let q_multiple = &multiple / halving;
    Ok(SchottkyMultiple { jacobian_pairing, lambda10, multiple, q_multiple })
}

/// Both computations of lambda^6 on the compactified moduli of abelian
/// threefolds.
#[derive(Clone, Debug)]
pub struct AbelianThreefoldRoutes {
    /// Transported from the curve side: the Jacobians are dense, so the
    /// genus-3 number halves by the extra inversion automorphism.
    pub via_torelli: Rat,
    /// The proportionality degree divided by the symbolic product multiple.
    pub via_proportionality: Rat,
}

/// Computes lambda^6 on the abelian threefold side along both routes and
/// insists they agree.
pub fn lambda6_a3() -> Result<AbelianThreefoldRoutes> {
    let halving = CitedInputs::builtin().scalar("torelli_double_cover_factor")?.value();
    let via_torelli = lambda6_m3()? / halving.clone();
    let via_proportionality = proportionality(3)? / genus3_product_multiple()?;
    if via_torelli != via_proportionality {
        return Err(Error::internal(
            "the Torelli route and the proportionality route disagree on lambda^6",
        ));
    }
    Ok(AbelianThreefoldRoutes { via_torelli, via_proportionality })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_cube_of_lambda3_reduces_to_one_384th_of_the_top_power() {
        let got = mumford_reduce().expect("reduction computes");
        assert_eq!(got, Rat::new(1, 384), "lambda_3^3 should reduce to lambda_1^9 / 384");
    }

    #[test]
    fn the_product_multiple_is_half_the_cube_multiple() {
        let product = hodge_product_multiple().expect("product reduces");
        assert_eq!(product, Rat::new(1, 768), "the four-fold product should give 1/768");
        let cube = mumford_reduce().expect("cube reduces");
        assert_eq!(product * Rat::from_int(2), cube, "768 should be exactly twice 384");
    }

    #[test]
    fn lambda3_cubed_comes_out_as_the_printed_value() {
        let got = lambda3_cubed().expect("number computes");
        assert_eq!(got, Rat::new(1, 43545600), "lambda_3^3 should be 1/43545600");
    }

    #[test]
    fn proportionality_degrees_match_the_bernoulli_products() {
        let expected = [
            (1, Rat::new(1, 24)),
            (2, Rat::new(1, 5760)),
            (3, Rat::new(1, 2903040)),
            (4, Rat::new(1, 1393459200)),
        ];
        for (g, want) in expected {
            let got = proportionality(g).expect("degree computes");
            assert_eq!(got, want, "proportionality at genus {g} should be {want}");
        }
        assert!(proportionality(0).is_err(), "genus 0 should be rejected");
    }

    #[test]
    fn the_schottky_multiple_is_sixteen_with_orbifold_half_eight() {
        let result = schottky_multiple().expect("multiple computes");
        assert_eq!(result.lambda10, Rat::new(1, 1814400), "lambda^10 should be 1/1814400");
        assert_eq!(result.jacobian_pairing, Rat::new(1, 113400));
        assert_eq!(result.multiple, Rat::from_int(16), "coarse multiple should be 16");
        assert_eq!(result.q_multiple, Rat::from_int(8), "orbifold multiple should be 8");
    }

    #[test]
    fn the_abelian_threefold_routes_agree_on_the_printed_value() {
        let routes = lambda6_a3().expect("routes compute");
        assert_eq!(routes.via_torelli, Rat::new(1, 181440));
        assert_eq!(routes.via_proportionality, Rat::new(1, 181440));
        let sixteenth = genus3_product_multiple().expect("multiple reduces");
        assert_eq!(sixteenth, Rat::new(1, 16), "the genus-3 product multiple should be 1/16");
    }
}
