//! Subgroup recognition for residue conditions.
//!
//! An admitted set that forms a subgroup of (Z/M)^n is the reduction of an
//! integer lattice between M Z^n and Z^n. Its Hermite normal form is a
//! canonical description, and a diagonal form is a plain conjunction of
//! divisibility conditions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::linalg::row_hnf;
use crate::{Error, Result};

use super::condition::CosetCondition;

/// Membership of x in the lattice with square row-HNF basis h.
fn in_lattice(h: &[Vec<BigInt>], x: &[BigInt]) -> bool {
    let n = x.len();
    let mut rest = x.to_vec();
    for col in 0..n {
        let pivot = &h[col][col];
        if (&rest[col] % pivot) != BigInt::zero() {
            return false;
        }
        let c = &rest[col] / pivot;
        for j in col..n {
            rest[j] -= &c * &h[col][j];
        }
    }
    rest.iter().all(|v| v.is_zero())
}

/// The HNF basis of the lattice of admitted tuples, if the admitted set is
/// a subgroup of (Z/M)^n. Rows are upper triangular with positive diagonal.
///
/// The subgroup test is by counting: the candidate lattice is generated by
/// the admitted tuples together with M e_i, and the set is a subgroup
/// exactly when the lattice index matches M^n divided by the set size and
/// every admitted tuple lies in the lattice.
pub fn admitted_lattice(cond: &CosetCondition) -> Result<Vec<Vec<BigInt>>> {
    if cond.is_empty_set() {
        return Err(Error::domain("empty admitted set has no lattice"));
    }
    let n = cond.vars().len();
    let m = BigInt::from(cond.modulus());
    let mut rows: Vec<Vec<BigInt>> = cond
        .admitted()
        .iter()
        .map(|t| t.iter().map(|&r| BigInt::from(r)).collect())
        .collect();
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = m.clone();
        rows.push(e);
    }
    let h = row_hnf(rows)?;
    if h.len() != n {
        return Err(Error::internal("lattice containing M Z^n is not full rank"));
    }
    let det: BigInt = (0..n).map(|i| h[i][i].clone()).product();
    let grid = m.pow(n as u32);
    if &det * BigInt::from(cond.count() as u64) != grid {
        return Err(Error::domain("admitted set is not a subgroup: index mismatch"));
    }
    for t in cond.admitted() {
        let x: Vec<BigInt> = t.iter().map(|&r| BigInt::from(r)).collect();
        if !in_lattice(&h, &x) {
            return Err(Error::domain("admitted set is not a subgroup: stray tuple"));
        }
    }
    Ok(h)
}

/// Diagonal entries if the HNF basis is diagonal, in variable order.
pub fn diagonal_of(h: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let n = h.len();
    for (i, row) in h.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j && !v.is_zero() {
                return None;
            }
        }
    }
    Some((0..n).map(|i| h[i][i].clone()).collect())
}

/// Convenience: the (divisor, variable) pairs of a diagonal subgroup,
/// omitting trivial divisors.
pub fn diagonal_divisibilities(cond: &CosetCondition) -> Result<Option<Vec<(BigInt, String)>>> {
    let h = admitted_lattice(cond)?;
    Ok(diagonal_of(&h).map(|diag| {
        diag.into_iter()
            .zip(cond.vars())
            .filter(|(d, _)| !d.is_one())
            .map(|(d, v)| (d, v.clone()))
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrality::condition::Clause;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn diagonal_subgroup_is_recognized() {
        let cond = CosetCondition::from_clause_set(
            names(&["a", "b"]),
            32,
            &[Clause::divisibility(4, 0, 2), Clause::divisibility(4, 1, 2)],
        )
        .unwrap();
        let divs = diagonal_divisibilities(&cond).unwrap().unwrap();
        assert_eq!(
            divs,
            vec![(BigInt::from(4), "a".to_string()), (BigInt::from(4), "b".to_string())]
        );
    }

    #[test]
    fn hyperplane_subgroup_has_non_diagonal_hnf() {
        let cond = CosetCondition::from_clause_set(
            names(&["a", "b", "c"]),
            5,
            &[Clause::form(5, vec![3, 2, 1])],
        )
        .unwrap();
        let h = admitted_lattice(&cond).unwrap();
        assert!(diagonal_of(&h).is_none(), "index-5 kernel lattice is not a product");
        let det: BigInt = (0..3).map(|i| h[i][i].clone()).product();
        assert_eq!(det, BigInt::from(5));
    }

    #[test]
    fn non_subgroups_are_rejected() {
        let cond = CosetCondition::from_clause_set(
            names(&["a", "b"]),
            5,
            &[Clause::any_form(5, vec![vec![1, 0], vec![0, 1]])],
        )
        .unwrap();
        assert!(
            admitted_lattice(&cond).is_err(),
            "a union of two axes is not closed under addition"
        );
    }

    #[test]
    fn trivial_subgroup_gives_the_full_modulus_diagonal() {
        let cond = CosetCondition::from_admitted(
            names(&["a", "b"]),
            6,
            std::collections::BTreeSet::from([vec![0u64, 0]]),
        )
        .unwrap();
        let divs = diagonal_divisibilities(&cond).unwrap().unwrap();
        assert_eq!(
            divs,
            vec![(BigInt::from(6), "a".to_string()), (BigInt::from(6), "b".to_string())]
        );
    }
}
