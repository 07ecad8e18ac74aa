//! Genus-4 lambda intersection numbers.
//!
//! The top lambda number comes from pairing lambda^7 with the closed
//! hyperelliptic class. Most of that class dies against lambda^7, so it is
//! first cut down to a combination of lambda^2 and delta_1^2 using the
//! solved test-surface coefficients and one imported relation; the two
//! surviving pairings are then computed directly.

use crate::exact::{binomial, Rat};
use crate::{Error, Result};

use super::hyperelliptic::lambda6_m3;
use super::inputs::CitedInputs;
use super::surfaces::solve_test_surfaces;

/// The closed genus-4 hyperelliptic class with everything killed by
/// lambda^7 dropped: a combination of lambda^2 and delta_1^2.
#[derive(Clone, Debug)]
pub struct RestrictedClass {
    pub lambda_sq: Rat,
    pub delta1_sq: Rat,
}

/// Expresses kappa_2 as x * lambda^2 + y * delta_1^2 using the imported
/// relation that holds modulo the kernel of multiplication by lambda^7.
fn kappa2_elimination() -> Result<(Rat, Rat)> {
    let kernel = CitedInputs::builtin().kernel_relation();
    let expected = ["kappa_2", "lambda^2", "delta_1^2"];
    let names: Vec<&str> = kernel.terms().map(|(c, _)| c).collect();
    if names != expected {
        return Err(Error::domain(format!(
            "the kernel relation should involve {expected:?}, found {names:?}"
        )));
    }
    let a = kernel.coeff_of("kappa_2")?;
    if a.is_zero() {
        return Err(Error::domain("the kernel relation does not involve kappa_2"));
    }
    let x = -(&kernel.coeff_of("lambda^2")?.clone() / a);
    let y = -(&kernel.coeff_of("delta_1^2")?.clone() / a);
    Ok((x, y))
}

/// The pairing lambda^7 * delta_1^2 on the genus-4 space.
///
/// The square of the elliptic-tail divisor restricts to the divisor itself
/// as minus the relative canonical class of the genus-3 side. Exactly one
/// of the seven lambda factors can land on the elliptic tail, so the number
/// factors as 7 times the elliptic degree times the genus-3 reading.
pub fn lambda7_delta1_squared() -> Result<Rat> {
    let inputs = CitedInputs::builtin();
    let elliptic = inputs.scalar("lambda_on_pointed_elliptic_curves")?.value();
    let tail_factor = inputs.scalar("elliptic_tail_self_intersection_factor")?.value();
    let ways = Rat::from(binomial(7, 1));
    Ok(ways * elliptic * tail_factor * lambda6_m3()?)
}

/// Cuts the closed hyperelliptic class down to lambda^2 and delta_1^2.
pub fn restricted_hyperelliptic_class() -> Result<RestrictedClass> {
    let inputs = CitedInputs::builtin();
    let kappa2_coeff = inputs.scalar("hyperelliptic_ansatz_kappa2")?.value();
    let lambda_sq_coeff = inputs.scalar("hyperelliptic_ansatz_lambda_sq")?.value();
    let delta1_sq_coeff = solve_test_surfaces()?.get("coef.h")?.clone();
    let (x, y) = kappa2_elimination()?;
    Ok(RestrictedClass {
        lambda_sq: kappa2_coeff * &x + lambda_sq_coeff.clone(),
        delta1_sq: kappa2_coeff * &y + delta1_sq_coeff,
    })
}

/// The top lambda number lambda^9 on the genus-4 space.
pub fn lambda9_m4() -> Result<Rat> {
    let h4 = super::hyperelliptic::hyperelliptic_degree(4)?;
    let class = restricted_hyperelliptic_class()?;
    let coarse_factor =
        CitedInputs::builtin().scalar("hyperelliptic_automorphism_factor")?.value();
    if class.lambda_sq.is_zero() {
        return Err(Error::internal("the restricted class lost its lambda^2 term"));
    }
    // lambda^7 times the coarse hyperelliptic class equals twice h(4);
    // expanding the restricted class and solving for lambda^9:
    let boundary = &class.delta1_sq * &lambda7_delta1_squared()?;
    Ok((coarse_factor * &h4 - boundary) / class.lambda_sq)
}

/// The byproduct pairing lambda^7 * kappa_2, read off the same elimination.
pub fn lambda7_kappa2() -> Result<Rat> {
    let (x, y) = kappa2_elimination()?;
    Ok(x * lambda9_m4()? + y * lambda7_delta1_squared()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_elliptic_tail_pairing_is_minus_one_over_77760() {
        let got = lambda7_delta1_squared().expect("pairing computes");
        assert_eq!(got, Rat::new(-1, 77760), "lambda^7 delta_1^2 should be -1/77760");
    }

    #[test]
    fn the_restricted_class_has_the_expected_two_coefficients() {
        let class = restricted_hyperelliptic_class().expect("restriction computes");
        assert_eq!(class.lambda_sq, Rat::new(51, 2), "lambda^2 coefficient should be 51/2");
        assert_eq!(class.delta1_sq, Rat::new(21, 5), "delta_1^2 coefficient should be 21/5");
    }

    #[test]
    fn the_top_lambda_number_is_one_over_113400() {
        let got = lambda9_m4().expect("lambda^9 computes");
        assert_eq!(got, Rat::new(1, 113400), "lambda^9 should be 1/113400");
    }

    #[test]
    fn the_kappa2_byproduct_is_169_over_1360800() {
        let got = lambda7_kappa2().expect("byproduct computes");
        assert_eq!(got, Rat::new(169, 1360800), "lambda^7 kappa_2 should be 169/1360800");
    }
}
