//! Residue-tuple conditions on the variables of a rational polynomial.
//!
//! A `CosetCondition` records, for a fixed modulus, exactly which residue
//! tuples are admitted by some integrality requirement. Sets are stored
//! explicitly, so every operation on them is a finite set computation with
//! an enumeration cap rather than a symbolic manipulation that could drift.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::{Error, Result};

/// Hard ceiling on any full-grid enumeration or product construction.
pub const ENUMERATION_CAP: u128 = 1 << 24;

/// Runs `f` on every tuple of residues modulo `modulus`, in odometer order
/// with the last coordinate moving fastest.
pub(crate) fn enumerate_grid<F: FnMut(&[u64])>(modulus: u64, n: usize, mut f: F) {
    let mut x = vec![0u64; n];
    loop {
        f(&x);
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            x[pos] += 1;
            if x[pos] < modulus {
                break;
            }
            x[pos] = 0;
            if pos == 0 {
                return;
            }
        }
        if n == 0 {
            return;
        }
    }
}

/// A disjunction of linear vanishing conditions: the clause holds at x when
/// some listed form has divisor | form . x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub divisor: u64,
    pub forms: Vec<Vec<i64>>,
}

impl Clause {
    /// divisor | x_i as a one-form clause.
    pub fn divisibility(divisor: u64, var_index: usize, n_vars: usize) -> Clause {
        let mut w = vec![0i64; n_vars];
        w[var_index] = 1;
        Clause { divisor, forms: vec![w] }
    }

    /// divisor | coeffs . x as a one-form clause.
    pub fn form(divisor: u64, coeffs: Vec<i64>) -> Clause {
        Clause { divisor, forms: vec![coeffs] }
    }

    /// divisor | any of the given forms.
    pub fn any_form(divisor: u64, forms: Vec<Vec<i64>>) -> Clause {
        Clause { divisor, forms }
    }

    pub fn holds(&self, x: &[u64]) -> bool {
        self.forms.iter().any(|w| {
            let acc: i128 = w
                .iter()
                .zip(x)
                .map(|(&c, &xi)| c as i128 * xi as i128)
                .sum();
            acc.rem_euclid(self.divisor as i128) == 0
        })
    }
}

/// The set of residue tuples modulo `modulus` admitted by a condition on
/// the named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCondition {
    vars: Vec<String>,
    modulus: u64,
    admitted: BTreeSet<Vec<u64>>,
}

impl CosetCondition {
    pub fn from_admitted(
        vars: Vec<String>,
        modulus: u64,
        admitted: BTreeSet<Vec<u64>>,
    ) -> Result<CosetCondition> {
        if vars.is_empty() {
            return Err(Error::domain("a residue condition needs at least one variable"));
        }
        if modulus < 2 {
            return Err(Error::domain("modulus must be at least 2"));
        }
        for t in &admitted {
            if t.len() != vars.len() {
                return Err(Error::domain("residue tuple length mismatch"));
            }
            if t.iter().any(|&r| r >= modulus) {
                return Err(Error::domain("residue out of range"));
            }
        }
        Ok(CosetCondition { vars, modulus, admitted })
    }

    /// Builds the set cut out by a conjunction of clauses, by enumeration.
    pub fn from_clause_set(
        vars: Vec<String>,
        modulus: u64,
        clauses: &[Clause],
    ) -> Result<CosetCondition> {
        let n = vars.len();
        if n == 0 {
            return Err(Error::domain("a residue condition needs at least one variable"));
        }
        if modulus < 2 {
            return Err(Error::domain("modulus must be at least 2"));
        }
        if (modulus as u128).pow(n as u32) > ENUMERATION_CAP {
            return Err(Error::domain("clause grid exceeds the enumeration cap"));
        }
        for c in clauses {
            if c.divisor < 2 || modulus % c.divisor != 0 {
                return Err(Error::domain("clause divisor must divide the modulus"));
            }
            if c.forms.is_empty() || c.forms.iter().any(|w| w.len() != n) {
                return Err(Error::domain("clause forms must match the variable count"));
            }
        }
        let mut admitted = BTreeSet::new();
        enumerate_grid(modulus, n, |x| {
            if clauses.iter().all(|c| c.holds(x)) {
                admitted.insert(x.to_vec());
            }
        });
        CosetCondition::from_admitted(vars, modulus, admitted)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn admitted(&self) -> &BTreeSet<Vec<u64>> {
        &self.admitted
    }

    pub fn count(&self) -> usize {
        self.admitted.len()
    }

    /// Size of the full residue grid.
    pub fn total(&self) -> u128 {
        (self.modulus as u128).pow(self.vars.len() as u32)
    }

    pub fn is_full(&self) -> bool {
        self.count() as u128 == self.total()
    }

    pub fn is_empty_set(&self) -> bool {
        self.admitted.is_empty()
    }

    fn check_comparable(&self, other: &CosetCondition) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::domain("conditions speak about different variables"));
        }
        if self.modulus != other.modulus {
            return Err(Error::domain("conditions have different moduli"));
        }
        Ok(())
    }

    /// Exact set equality; errors if the two conditions are not comparable.
    pub fn same_set(&self, other: &CosetCondition) -> Result<bool> {
        self.check_comparable(other)?;
        Ok(self.admitted == other.admitted)
    }

    /// Whether self admits at most what other admits (self is the stronger
    /// or equal condition).
    pub fn implies(&self, other: &CosetCondition) -> Result<bool> {
        self.check_comparable(other)?;
        Ok(self.admitted.is_subset(&other.admitted))
    }

    /// Intersection at a common modulus.
    pub fn intersect(&self, other: &CosetCondition) -> Result<CosetCondition> {
        self.check_comparable(other)?;
        let admitted = self.admitted.intersection(&other.admitted).cloned().collect();
        CosetCondition::from_admitted(self.vars.clone(), self.modulus, admitted)
    }

    /// Combines conditions at coprime moduli into one condition at the
    /// product modulus. Tuples are paired coordinatewise by the Chinese
    /// remainder isomorphism, so the admitted count multiplies; the full
    /// grid is never enumerated.
    pub fn conjoin(&self, other: &CosetCondition) -> Result<CosetCondition> {
        if self.vars != other.vars {
            return Err(Error::domain("conditions speak about different variables"));
        }
        let (m1, m2) = (self.modulus, other.modulus);
        if m1.gcd(&m2) != 1 {
            return Err(Error::domain("conjoin needs coprime moduli"));
        }
        let m = m1
            .checked_mul(m2)
            .ok_or_else(|| Error::domain("combined modulus overflows"))?;
        let pairs = self.count() as u128 * other.count() as u128;
        if pairs > ENUMERATION_CAP {
            return Err(Error::domain("combined admitted set exceeds the enumeration cap"));
        }
        // x = s1 + m1 * ((s2 - s1) * inv(m1) mod m2), per coordinate.
        let e = (m1 as i128).extended_gcd(&(m2 as i128));
        let inv_m1 = e.x.rem_euclid(m2 as i128) as u64;
        let mut admitted = BTreeSet::new();
        for s1 in &self.admitted {
            for s2 in &other.admitted {
                let tuple: Vec<u64> = s1
                    .iter()
                    .zip(s2)
                    .map(|(&a, &b)| {
                        let diff = (b as i128 - a as i128).rem_euclid(m2 as i128) as u64;
                        a + m1 * ((diff as u128 * inv_m1 as u128 % m2 as u128) as u64)
                    })
                    .collect();
                admitted.insert(tuple);
            }
        }
        CosetCondition::from_admitted(self.vars.clone(), m, admitted)
    }
}

impl fmt::Display for CosetCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mod {}: {} of {} tuples on ({})",
            self.modulus,
            self.count(),
            self.total(),
            self.vars.join(", ")
        )
    }
}

/// Renders "d|v" or "d|(3a+2b+c)" with unit coefficients left implicit.
pub fn format_form(divisor: u64, coeffs: &[u64], vars: &[String]) -> String {
    let live: Vec<(usize, u64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    let body: String = live
        .iter()
        .enumerate()
        .map(|(pos, &(i, c))| {
            let mut s = String::new();
            if pos > 0 {
                s.push('+');
            }
            if c != 1 {
                s.push_str(&c.to_string());
            }
            s.push_str(&vars[i]);
            s
        })
        .collect();
    if live.len() == 1 && live[0].1 == 1 {
        format!("{divisor}|{body}")
    } else {
        format!("{divisor}|({body})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn clause_set_carves_out_the_expected_tuples() {
        let cond = CosetCondition::from_clause_set(
            names(&["a", "b"]),
            4,
            &[Clause::divisibility(2, 0, 2)],
        )
        .unwrap();
        assert_eq!(cond.count(), 8, "a even, b free, mod 4");
        assert!(cond.admitted().contains(&vec![2, 3]));
        assert!(!cond.admitted().contains(&vec![1, 0]));
    }

    #[test]
    fn disjunctive_clause_unions_hyperplanes() {
        let cond = CosetCondition::from_clause_set(
            names(&["a", "b"]),
            5,
            &[Clause::any_form(5, vec![vec![1, 0], vec![1, 3]])],
        )
        .unwrap();
        // 5|a or 5|(a+3b): 5 + 5 - 1 shared origin.
        assert_eq!(cond.count(), 9);
    }

    #[test]
    fn conjoin_multiplies_counts_via_crt() {
        let c4 = CosetCondition::from_clause_set(
            names(&["a"]),
            4,
            &[Clause::divisibility(4, 0, 1)],
        )
        .unwrap();
        let c3 = CosetCondition::from_clause_set(
            names(&["a"]),
            3,
            &[Clause::divisibility(3, 0, 1)],
        )
        .unwrap();
        let both = c4.conjoin(&c3).unwrap();
        assert_eq!(both.modulus(), 12);
        assert_eq!(both.admitted(), &BTreeSet::from([vec![0u64]]), "12 | a");
        assert!(c4.conjoin(&c4).is_err(), "moduli must be coprime");
    }

    #[test]
    fn implication_and_equality_respect_set_order() {
        let vars = names(&["a"]);
        let strong =
            CosetCondition::from_admitted(vars.clone(), 4, BTreeSet::from([vec![0]])).unwrap();
        let weak =
            CosetCondition::from_admitted(vars.clone(), 4, BTreeSet::from([vec![0], vec![2]]))
                .unwrap();
        assert!(strong.implies(&weak).unwrap());
        assert!(!weak.implies(&strong).unwrap());
        assert!(!strong.same_set(&weak).unwrap());
    }

    #[test]
    fn form_rendering_matches_the_compact_style() {
        let vars = names(&["a1", "b1", "c1"]);
        assert_eq!(format_form(5, &[1, 0, 0], &vars), "5|a1");
        assert_eq!(format_form(5, &[3, 2, 1], &vars), "5|(3a1+2b1+c1)");
        assert_eq!(format_form(2, &[0, 1, 0], &vars), "2|b1");
    }
}
