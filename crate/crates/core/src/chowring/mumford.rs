use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::presentation::{cmp_graded, normal_form_raw, Generator, RingPresentation, Rule};
use crate::exact::{MultiPoly, Rat};
use crate::{Error, Result};

/// Derives the lambda-class ring of genus `g` from first principles: the sum
/// of the Hodge bundle and its dual is flat, so the product of their total
/// Chern classes is 1. Each graded component of that identity, reduced
/// against the rules already found, yields one new rewrite rule for its
/// leading monomial.
///
/// `top_degree` is the dimension at which the ring is truncated; it must be
/// at least 2g so every component of the identity survives long enough to be
/// seen (the last one lives in degree 2g).
pub fn derived_lambda_presentation(g: u32, top_degree: u32) -> Result<RingPresentation> {
    if g < 2 {
        return Err(Error::domain("the lambda ring derivation needs genus at least 2"));
    }
    if top_degree < 2 * g {
        return Err(Error::domain(format!(
            "top degree {top_degree} would truncate the defining identity (needs at least {})",
            2 * g
        )));
    }
    let generators: Vec<Generator> = (1..=g)
        .map(|i| Generator { name: format!("lambda{i}"), grade: i })
        .collect();
    let grades: Vec<u32> = (1..=g).collect();
    let n = g as usize;
    let vars: Vec<String> = generators.iter().map(|gen| gen.name.clone()).collect();

    // c(E) * c(E dual) - 1 as a polynomial in lambda1..lambdag.
    let unit = |i: usize| {
        let mut e = vec![0u32; n];
        e[i] = 1;
        e
    };
    let mut chern = MultiPoly::constant(vars.clone(), Rat::one())?;
    let mut chern_dual = chern.clone();
    for i in 0..n {
        let sign = if (i + 1) % 2 == 1 { -1 } else { 1 };
        chern = &chern
            + &MultiPoly::from_terms(vars.clone(), [(unit(i), Rat::one())])?;
        chern_dual = &chern_dual
            + &MultiPoly::from_terms(vars.clone(), [(unit(i), Rat::from_int(sign))])?;
    }
    let identity = &(&chern * &chern_dual)
        - &MultiPoly::constant(vars.clone(), Rat::one())?;

    // Graded components in ascending degree, each reduced by what is already
    // known; the leading monomial of the reduction is solved for.
    let mut rules: Vec<Rule> = Vec::new();
    let max_grade: u32 = 2 * g;
    for d in 1..=max_grade {
        let component: BTreeMap<Vec<u32>, Rat> = identity
            .terms()
            .filter(|(e, _)| {
                e.iter()
                    .zip(&grades)
                    .map(|(&x, &gr)| x * gr)
                    .sum::<u32>()
                    == d
            })
            .map(|(e, c)| (e.to_vec(), c.clone()))
            .collect();
        if component.is_empty() {
            continue;
        }
        let reduced = normal_form_raw(&grades, &rules, Some(top_degree), component)?;
        if reduced.is_empty() {
            continue;
        }
        let lead = reduced
            .keys()
            .max_by(|a, b| cmp_graded(a, b, &grades))
            .cloned()
            .expect("reduced component is nonempty");
        let lead_coeff = reduced[&lead].clone();
        let rhs: Vec<(Vec<u32>, Rat)> = reduced
            .iter()
            .filter(|(e, _)| *e != &lead)
            .map(|(e, c)| (e.clone(), -(c / &lead_coeff)))
            .collect();
        rules.push(Rule { lhs: lead, rhs });
    }

    let mut calibration = vec![0u32; n];
    calibration[0] = top_degree;
    RingPresentation::from_parts(
        format!("lambda_ring_g{g}_dim{top_degree}"),
        generators,
        rules,
        top_degree,
        calibration,
        Rat::one(),
        Rat::one(),
        Some(format!(
            "Derived at runtime from the vanishing of the positive-degree Chern classes \
             of the sum of the rank-{g} Hodge bundle and its dual, truncated above \
             degree {top_degree}. Calibrated so normal forms read off the multiple of \
             lambda1^{top_degree}."
        )),
    )
}

/// The genus-4 lambda ring at moduli dimension 9, derived once and cached.
/// Matches the shipped presentation file; the acceptance tests assert that.
pub fn genus4_lambda_ring() -> &'static RingPresentation {
    static P: OnceLock<RingPresentation> = OnceLock::new();
    P.get_or_init(|| {
        derived_lambda_presentation(4, 9).expect("genus-4 lambda ring derivation succeeds")
    })
}

/// The genus-4 lambda ring truncated at degree 10 instead of 9: the right
/// ambient for principally polarized abelian fourfolds, where the top lambda
/// power lives one degree higher.
pub fn genus4_lambda_ring_dim10() -> &'static RingPresentation {
    static P: OnceLock<RingPresentation> = OnceLock::new();
    P.get_or_init(|| {
        derived_lambda_presentation(4, 10).expect("genus-4 degree-10 derivation succeeds")
    })
}

/// The genus-3 lambda ring at dimension 6 (abelian threefolds).
pub fn genus3_lambda_ring() -> &'static RingPresentation {
    static P: OnceLock<RingPresentation> = OnceLock::new();
    P.get_or_init(|| {
        derived_lambda_presentation(3, 6).expect("genus-3 lambda ring derivation succeeds")
    })
}

/// Normal form in the shipped genus-4 lambda ring (moduli truncation,
/// degree 9). The result is always a rational multiple of lambda1^9.
pub fn mumford_reduce(p: &MultiPoly) -> Result<MultiPoly> {
    RingPresentation::builtin_mumford_m4().normal_form(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(vars: &[String], exps: &[u32], c: Rat) -> MultiPoly {
        MultiPoly::from_terms(vars.to_vec(), [(exps.to_vec(), c)]).unwrap()
    }

    #[test]
    fn derived_genus4_ring_matches_the_shipped_file() {
        let derived = genus4_lambda_ring();
        let shipped = RingPresentation::builtin_mumford_m4();
        assert!(
            derived.math_eq(shipped),
            "runtime derivation and shipped presentation must agree:\n{derived:?}\nvs\n{shipped:?}"
        );
    }

    #[test]
    fn the_genus4_rules_are_the_four_classical_ones() {
        let p = genus4_lambda_ring();
        let lhs: Vec<&[u32]> = p.rules().iter().map(|r| r.lhs.as_slice()).collect();
        assert_eq!(
            lhs,
            vec![
                &[0, 1, 0, 0][..], // lambda2
                &[0, 0, 0, 1],     // lambda4
                &[0, 0, 2, 0],     // lambda3^2
                &[5, 0, 1, 0],     // lambda1^5 lambda3
            ],
            "rule heads in derivation order"
        );
    }

    #[test]
    fn dimension10_ring_reduces_the_full_product_to_lambda1_tenth() {
        let p = genus4_lambda_ring_dim10();
        let vars = p.generator_vars();
        let product = mono(&vars, &[1, 1, 1, 1], Rat::one());
        let nf = p.normal_form(&product).unwrap();
        assert_eq!(
            nf,
            mono(&vars, &[10, 0, 0, 0], Rat::new(1, 768)),
            "lambda1*lambda2*lambda3*lambda4 = lambda1^10/768"
        );
        let l1_l3cubed = mono(&vars, &[1, 0, 3, 0], Rat::one());
        assert_eq!(
            p.normal_form(&l1_l3cubed).unwrap(),
            mono(&vars, &[10, 0, 0, 0], Rat::new(1, 384)),
            "lambda1*lambda3^3 = lambda1^10/384"
        );
    }

    #[test]
    fn genus3_ring_has_the_three_expected_rules_and_sixteenth() {
        let p = genus3_lambda_ring();
        let lhs: Vec<&[u32]> = p.rules().iter().map(|r| r.lhs.as_slice()).collect();
        assert_eq!(lhs, vec![&[0, 1, 0][..], &[1, 0, 1], &[0, 0, 2]]);
        let vars = p.generator_vars();
        let product = mono(&vars, &[1, 1, 1], Rat::one());
        assert_eq!(
            p.normal_form(&product).unwrap(),
            mono(&vars, &[6, 0, 0], Rat::new(1, 16)),
            "lambda1*lambda2*lambda3 = lambda1^6/16"
        );
    }

    #[test]
    fn truncation_below_twice_genus_is_refused() {
        assert!(derived_lambda_presentation(4, 7).is_err());
    }

    #[test]
    fn mumford_reduce_computes_the_cube_coefficient() {
        let vars = RingPresentation::builtin_mumford_m4().generator_vars();
        let nf = mumford_reduce(&mono(&vars, &[0, 0, 3, 0], Rat::one())).unwrap();
        assert_eq!(nf.coeff(&[9, 0, 0, 0]), Rat::new(1, 384));
    }
}
