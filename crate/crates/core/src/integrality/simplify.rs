//! Readable forms for residue conditions.
//!
//! The simplifier tries, in order: the trivial condition, a diagonal
//! subgroup (a conjunction of single-variable divisibilities), a union of
//! at most four linear hyperplanes at a prime modulus, and a general
//! subgroup presented by its HNF basis. Sets matching none of these stay
//! raw; nothing is ever approximated.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::Result;

use super::condition::{format_form, CosetCondition};
use super::lattice::{admitted_lattice, diagonal_of};

/// Cap on the hyperplane search work, as grid size times candidate count.
const HYPERPLANE_WORK_CAP: u128 = 1 << 16;

/// Most disjuncts a hyperplane union may have before we give up on it as a
/// readable description.
const MAX_DISJUNCTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplified {
    /// Every residue tuple is admitted.
    Always,
    /// A conjunction of divisor | variable conditions.
    Divisibilities { divisors: Vec<(BigInt, String)> },
    /// A union of kernels of linear forms at a prime modulus. Each form is
    /// monic at its first nonzero coefficient, the canonical unit multiple.
    HyperplaneUnion { modulus: u64, forms: Vec<Vec<u64>>, vars: Vec<String> },
    /// A subgroup that is not diagonal and not a small hyperplane union,
    /// given by its upper triangular HNF lattice basis.
    Lattice { basis: Vec<Vec<BigInt>> },
    /// No structured description found.
    Raw,
}

impl fmt::Display for Simplified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simplified::Always => write!(f, "always integral"),
            Simplified::Divisibilities { divisors } => {
                if divisors.is_empty() {
                    return write!(f, "always integral");
                }
                let parts: Vec<String> =
                    divisors.iter().map(|(d, v)| format!("{d}|{v}")).collect();
                write!(f, "{}", parts.join(" and "))
            }
            Simplified::HyperplaneUnion { modulus, forms, vars } => {
                let parts: Vec<String> =
                    forms.iter().map(|w| format_form(*modulus, w, vars)).collect();
                write!(f, "{}", parts.join(" or "))
            }
            Simplified::Lattice { basis } => {
                let rows: Vec<String> = basis
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                        format!("[{}]", cells.join(", "))
                    })
                    .collect();
                write!(f, "subgroup with lattice basis {}", rows.join(" "))
            }
            Simplified::Raw => write!(f, "no structured form"),
        }
    }
}

/// Attempts to present the admitted set as a union of at most
/// `MAX_DISJUNCTS` hyperplanes through the origin, at a prime modulus.
fn hyperplane_union(cond: &CosetCondition) -> Option<Vec<Vec<u64>>> {
    let q = cond.modulus();
    let n = cond.vars().len();
    // Candidate normals up to unit scaling: one monic representative each.
    let candidate_count = ((q as u128).pow(n as u32) - 1) / (q as u128 - 1);
    if cond.total() * candidate_count > HYPERPLANE_WORK_CAP {
        return None;
    }
    let mut covering: Vec<Vec<u64>> = Vec::new();
    let mut covered: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut w = vec![0u64; n];
    'outer: loop {
        // Next candidate vector mod q, odometer order.
        let mut pos = n;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            w[pos] += 1;
            if w[pos] < q {
                break;
            }
            w[pos] = 0;
        }
        // Keep only monic representatives: first nonzero coefficient 1.
        match w.iter().find(|&&c| c != 0) {
            Some(&lead) if lead == 1 => {}
            _ => continue,
        }
        let kernel: Vec<Vec<u64>> = cond
            .admitted()
            .iter()
            .filter(|t| {
                t.iter().zip(&w).map(|(&x, &c)| x as u128 * c as u128).sum::<u128>()
                    % q as u128
                    == 0
            })
            .cloned()
            .collect();
        // The form qualifies when its whole kernel is admitted.
        let kernel_size = (q as u128).pow((n - 1) as u32);
        if kernel.len() as u128 == kernel_size {
            covering.push(w.clone());
            covered.extend(kernel);
        }
    }
    if covering.is_empty() || covering.len() > MAX_DISJUNCTS {
        return None;
    }
    if covered.len() == cond.count() {
        Some(covering)
    } else {
        None
    }
}

/// Finds the most readable faithful description of the admitted set.
pub fn simplify(cond: &CosetCondition) -> Result<Simplified> {
    if cond.is_full() {
        return Ok(Simplified::Always);
    }
    let lattice = admitted_lattice(cond).ok();
    if let Some(h) = &lattice {
        if let Some(diag) = diagonal_of(h) {
            let divisors = diag
                .into_iter()
                .zip(cond.vars())
                .filter(|(d, _)| *d != BigInt::from(1))
                .map(|(d, v)| (d, v.clone()))
                .collect();
            return Ok(Simplified::Divisibilities { divisors });
        }
    }
    let q = BigInt::from(cond.modulus());
    if crate::exact::is_prime(&q)? {
        if let Some(forms) = hyperplane_union(cond) {
            return Ok(Simplified::HyperplaneUnion {
                modulus: cond.modulus(),
                forms,
               vars: cond.vars().to_vec(),
            });
        }
    }
    if let Some(h) = lattice {
        return Ok(Simplified::Lattice { basis: h });
    }
    Ok(Simplified::Raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrality::condition::Clause;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    fn clause_cond(vars: &[&str], modulus: u64, clauses: &[Clause]) -> CosetCondition {
        CosetCondition::from_clause_set(names(vars), modulus, clauses).unwrap()
    }

    #[test]
    fn full_sets_simplify_to_always() {
        let cond = clause_cond(&["a"], 4, &[]);
        assert_eq!(simplify(&cond).unwrap(), Simplified::Always);
    }

    #[test]
    fn diagonal_sets_print_as_divisibilities() {
        let cond = clause_cond(
            &["a", "b"],
            32,
            &[Clause::divisibility(4, 0, 2), Clause::divisibility(2, 1, 2)],
        );
        let s = simplify(&cond).unwrap();
        assert_eq!(s.to_string(), "4|a and 2|b");
    }

    #[test]
    fn single_hyperplane_prints_with_parentheses() {
        let cond = clause_cond(&["a1", "b1", "c1"], 5, &[Clause::form(5, vec![3, 2, 1])]);
        let s = simplify(&cond).unwrap();
        // The monic unit multiple of (3,2,1) mod 5 is (1,4,2).
        assert_eq!(s.to_string(), "5|(a1+4b1+2c1)");
        // As sets, the monic form agrees with the original one.
        let back = clause_cond(&["a1", "b1", "c1"], 5, &[Clause::form(5, vec![1, 4, 2])]);
        assert!(cond.same_set(&back).unwrap());
    }

    #[test]
    fn two_hyperplanes_stay_a_disjunction() {
        let cond = clause_cond(
            &["a", "b", "c"],
            5,
            &[Clause::any_form(5, vec![vec![1, 0, 0], vec![1, 3, 1]])],
        );
        let s = simplify(&cond).unwrap();
        assert_eq!(s.to_string(), "5|a or 5|(a+3b+c)");
    }

    #[test]
    fn five_way_unions_are_left_raw() {
        // All residues with some coordinate zero mod 7 in two variables:
        // the union of both axes plus more would be needed; build an
        // actual 5-plane union and check the simplifier refuses it.
        let forms: Vec<Vec<i64>> =
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2], vec![1, 3]];
        let cond = clause_cond(&["a", "b"], 7, &[Clause::any_form(7, forms)]);
        let s = simplify(&cond).unwrap();
        assert_eq!(s, Simplified::Raw, "five disjuncts exceed the readability bound");
    }

    #[test]
    fn non_diagonal_subgroup_at_composite_modulus_reports_its_basis() {
        // Mod 4: pairs with a + 2b divisible by 4 form a subgroup whose
        // lattice is not a product of divisibilities.
        let cond = clause_cond(&["a", "b"], 4, &[Clause::form(4, vec![1, 2])]);
        match simplify(&cond).unwrap() {
            Simplified::Lattice { basis } => {
                assert_eq!(basis.len(), 2);
            }
            other => panic!("expected a lattice description, got {other}"),
        }
    }
}
