//! Which residue tuples make a rational polynomial q-integral.
//!
//! Write p = P / d with P an integer polynomial and d the least common
//! denominator, and let dq be the q-adic depth of d. Then p(x) is q-integral
//! exactly when q^dq divides P(x), a condition on x modulo q^dq. `analyze`
//! reports that set at any precision q^k with k >= dq; `analyze_partial`
//! works below the depth and returns the weaker condition visible there,
//! a superset of the true one.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{is_prime, MultiPoly};
use crate::{Error, Result};

use super::condition::{enumerate_grid, CosetCondition, ENUMERATION_CAP};

/// Exponent of q in n. The input must be nonzero.
pub fn q_valuation(n: &BigInt, q: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero is undefined");
    let q = BigInt::from(q);
    let mut rest = n.clone();
    let mut v = 0;
    while (&rest % &q).is_zero() {
        rest /= &q;
        v += 1;
    }
    v
}

/// q-adic depth of the coefficient denominators of p.
pub fn denominator_depth(p: &MultiPoly, q: u64) -> u32 {
    q_valuation(&p.denominator_lcm(), q)
}

fn check_prime(q: u64) -> Result<()> {
    if q < 2 || !is_prime(&BigInt::from(q))? {
        return Err(Error::domain(format!("{q} is not prime")));
    }
    Ok(())
}

/// The exact residue condition for q-integrality of p, stated modulo q^k.
/// Requires k at least the denominator depth, so the answer is not
/// truncated; below the depth, use `analyze_partial`.
pub fn analyze(p: &MultiPoly, q: u64, k: u32) -> Result<CosetCondition> {
    check_prime(q)?;
    if k < 1 {
        return Err(Error::domain("precision k must be at least 1"));
    }
    let dq = denominator_depth(p, q);
    if k < dq {
        return Err(Error::domain(format!(
            "precision k={k} is below the denominator depth {dq}; use analyze_partial"
        )));
    }
    analyze_at(p, q, k, dq)
}

/// The condition visible at precision q^k: q^min(k, depth) must divide the
/// cleared polynomial. For k below the depth this is a necessary condition
/// only, admitting a superset of the true tuples.
pub fn analyze_partial(p: &MultiPoly, q: u64, k: u32) -> Result<CosetCondition> {
    check_prime(q)?;
    if k < 1 {
        return Err(Error::domain("precision k must be at least 1"));
    }
    let dq = denominator_depth(p, q);
    analyze_at(p, q, k, dq.min(k))
}

fn checked_power(q: u64, k: u32) -> Result<u64> {
    q.checked_pow(k)
        .ok_or_else(|| Error::domain("modulus q^k overflows"))
}

/// Shared core: test q^m | P(x) on the grid mod q^m, then lift the admitted
/// tuples to the requested precision q^k.
fn analyze_at(p: &MultiPoly, q: u64, k: u32, m: u32) -> Result<CosetCondition> {
    let n = p.vars().len();
    let modulus = checked_power(q, k)?;
    if (modulus as u128).pow(n as u32) > ENUMERATION_CAP {
        return Err(Error::domain(format!(
            "residue grid {modulus}^{n} exceeds the enumeration cap"
        )));
    }
    let vars = p.vars().to_vec();

    let base = checked_power(q, m)?;
    let mut admitted_base: BTreeSet<Vec<u64>> = BTreeSet::new();
    if m == 0 {
        // Already integral at q: every tuple is admitted.
        enumerate_grid(modulus, n, |x| {
            admitted_base.insert(x.to_vec());
        });
        return CosetCondition::from_admitted(vars, modulus, admitted_base);
    }

    let (_, int_terms) = p.cleared_integer_terms();
    let terms: Vec<(u64, Vec<u32>)> = int_terms
        .iter()
        .map(|(exps, c)| {
            let r = ((c % BigInt::from(base)) + BigInt::from(base)) % BigInt::from(base);
            let digits = r.to_u64_digits().1;
            (digits.first().copied().unwrap_or(0), exps.clone())
        })
        .collect();
    let max_exp: Vec<u32> = (0..n)
        .map(|v| terms.iter().map(|(_, e)| e[v]).max().unwrap_or(0))
        .collect();

    // Power tables per variable when the base modulus is small; otherwise
    // powers are recomputed per tuple by repeated multiplication.
    let tables: Option<Vec<Vec<Vec<u64>>>> = if base <= 1 << 16 {
        Some(
            (0..n)
                .map(|v| {
                    (0..base)
                        .map(|r| {
                            let mut row = vec![1u64; max_exp[v] as usize + 1];
                            for e in 1..row.len() {
                                row[e] = row[e - 1] * r % base;
                            }
                            row
                        })
                        .collect()
                })
                .collect(),
        )
    } else {
        None
    };

    enumerate_grid(base, n, |x| {
        let mut acc: u64 = 0;
        for (c, exps) in &terms {
            let mut t = *c;
            for (v, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                t = match &tables {
                    Some(tabs) => t * tabs[v][x[v] as usize][e as usize] % base,
                    None => {
                        let mut pw = 1u64;
                        for _ in 0..e {
                            pw = pw * x[v] % base;
                        }
                        t * pw % base
                    }
                };
            }
            acc = (acc + t) % base;
        }
        if acc == 0 {
            admitted_base.insert(x.to_vec());
        }
    });

    // Lift from the base grid to the requested precision.
    let lift = modulus / base;
    if lift == 1 {
        return CosetCondition::from_admitted(vars, modulus, admitted_base);
    }
    let mut admitted: BTreeSet<Vec<u64>> = BTreeSet::new();
    for t in &admitted_base {
        enumerate_grid(lift, n, |j| {
            let lifted: Vec<u64> = t.iter().zip(j).map(|(&r, &jj)| r + base * jj).collect();
            admitted.insert(lifted);
        });
    }
    CosetCondition::from_admitted(vars, modulus, admitted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;

    fn poly(vars: &[&str], terms: &[(&[u32], i64, i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            vars.iter().map(|s| s.to_string()).collect(),
            terms
                .iter()
                .map(|(e, n, d)| (e.to_vec(), Rat::new(BigInt::from(*n), BigInt::from(*d)))),
        )
        .unwrap()
    }

    #[test]
    fn halves_of_a_single_variable() {
        // x/2 is 2-integral exactly for even x.
        let p = poly(&["x"], &[(&[1], 1, 2)]);
        let cond = analyze(&p, 2, 1).unwrap();
        assert_eq!(cond.admitted(), &BTreeSet::from([vec![0u64]]));
    }

    #[test]
    fn depth_zero_polynomials_admit_everything() {
        let p = poly(&["x", "y"], &[(&[1, 1], 3, 1)]);
        let cond = analyze(&p, 5, 1).unwrap();
        assert!(cond.is_full(), "integer polynomial is always 5-integral");
    }

    #[test]
    fn fermat_quotient_style_condition() {
        // (x^2 + x) / 2 is always integral: x^2 + x is even for all x.
        let p = poly(&["x"], &[(&[2], 1, 2), (&[1], 1, 2)]);
        let cond = analyze(&p, 2, 1).unwrap();
        assert!(cond.is_full());
    }

    #[test]
    fn precision_above_depth_lifts_cosets() {
        let p = poly(&["x"], &[(&[1], 1, 2)]);
        let cond = analyze(&p, 2, 3).unwrap();
        assert_eq!(cond.modulus(), 8);
        assert_eq!(
            cond.admitted(),
            &BTreeSet::from([vec![0u64], vec![2], vec![4], vec![6]]),
            "even residues mod 8"
        );
    }

    #[test]
    fn partial_analysis_is_a_superset_of_the_truth() {
        // x^2/4: true condition 2|x; at k=1 the visible condition is the same,
        // but for x/4 the k=1 view only sees 2|x while the truth is 4|x.
        let p = poly(&["x"], &[(&[1], 1, 4)]);
        let partial = analyze_partial(&p, 2, 1).unwrap();
        assert_eq!(partial.admitted(), &BTreeSet::from([vec![0u64]]), "2|x visible at k=1");
        let full = analyze(&p, 2, 2).unwrap();
        assert_eq!(full.admitted(), &BTreeSet::from([vec![0u64]]), "4|x is the truth");
        assert!(analyze(&p, 2, 1).is_err(), "k below depth must be refused by analyze");
    }

    #[test]
    fn composite_q_is_rejected() {
        let p = poly(&["x"], &[(&[1], 1, 2)]);
        assert!(analyze(&p, 6, 1).is_err());
    }

    #[test]
    fn grid_cap_is_enforced() {
        let p = poly(&["x", "y", "z"], &[(&[1, 1, 1], 1, 1024)]);
        assert!(
            analyze(&p, 2, 10).is_err(),
            "2^30 tuples exceed the enumeration cap"
        );
    }

    #[test]
    fn two_variable_condition_with_cross_terms() {
        // (x^2 y + x y^2) / 3 = xy(x + y)/3: admitted iff 3 | x, 3 | y, or 3 | x+y.
        let p = poly(&["x", "y"], &[(&[2, 1], 1, 3), (&[1, 2], 1, 3)]);
        let cond = analyze(&p, 3, 1).unwrap();
        for x in 0u64..3 {
            for y in 0u64..3 {
                let want = x == 0 || y == 0 || (x + y) % 3 == 0;
                assert_eq!(
                    cond.admitted().contains(&vec![x, y]),
                    want,
                    "({x},{y}) membership"
                );
            }
        }
    }
}
