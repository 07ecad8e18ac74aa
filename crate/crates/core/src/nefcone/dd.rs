//! Extremal ray enumeration for polyhedral cones {x : Ax >= 0} over the
//! integers, by the double description method with combinatorial adjacency.
//!
//! The engine first splits off the lineality space (the kernel of A), works
//! in a pointed restriction, and seeds the description with an invertible
//! row basis. Rows are then added one at a time; each addition keeps the
//! rays on the feasible side, drops the infeasible ones, and joins adjacent
//! feasible/infeasible pairs on the new hyperplane. Tightness bookkeeping
//! uses one bit per processed row, so at most 128 inequalities are accepted.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::linalg::{self, Mat};
use crate::exact::Rat;
use crate::{Error, Result};

const MAX_ROWS: usize = 128;

/// Output of the enumeration: extremal rays of the pointed part plus a basis
/// of the lineality space. Rays are primitive (content 1) and lex-sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleDescription {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rat_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().map(|x| Rat::from_int(x.clone())).collect())
        .collect()
}

/// Enumerates the extremal rays of {x : rows * x >= 0 componentwise}.
///
/// Zero rows are dropped and duplicates collapsed before anything else; the
/// result is independent of row order and scaling. Fails with an internal
/// error if the certified validation of the output does not go through.
pub fn extremal_rays_of(rows_in: &[Vec<BigInt>]) -> Result<DoubleDescription> {
    let Some(first) = rows_in.first() else {
        return Err(Error::domain("cone needs at least one inequality row"));
    };
    let n = first.len();
    if n == 0 {
        return Err(Error::domain("cone inequalities need at least one coordinate"));
    }
    if rows_in.iter().any(|r| r.len() != n) {
        return Err(Error::domain("ragged inequality rows"));
    }
    // Canonical row set: content 1, no zero rows, no duplicates.
    let mut seen = BTreeSet::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for r in rows_in {
        let p = linalg::primitive(r.clone());
        if p.iter().all(|x| x.is_zero()) {
            continue;
        }
        if seen.insert(p.clone()) {
            rows.push(p);
        }
    }
    if rows.is_empty() {
        // No constraints at all: the whole space, pure lineality.
        let lineality = (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::from(1);
                e
            })
            .collect();
        return Ok(DoubleDescription { rays: Vec::new(), lineality });
    }
    if rows.len() > MAX_ROWS {
        return Err(Error::domain(format!(
            "at most {MAX_ROWS} inequalities are supported, got {}",
            rows.len()
        )));
    }

    let lineality = linalg::integer_kernel(&rows)?;

    // Pivot columns of the row space give coordinates in which the
    // restricted system is pointed: on the complement subspace {x_free = 0}
    // the inequalities depend only on the pivot coordinates, and the
    // restricted matrix has full column rank.
    let mut mat = Mat::from_rows(rat_rows(&rows))?;
    let pivots = mat.rref();
    let r = pivots.len();
    let restricted: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| pivots.iter().map(|&j| row[j].clone()).collect())
        .collect();
    let pointed_rays = pointed_dd(&restricted, r)?;

    // Embed back with zeros in the free coordinates and canonicalize.
    let mut rays: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for v in pointed_rays {
        let mut full = vec![BigInt::zero(); n];
        for (idx, &j) in pivots.iter().enumerate() {
            full[j] = v[idx].clone();
        }
        rays.insert(linalg::primitive(full));
    }
    let rays: Vec<Vec<BigInt>> = rays.into_iter().collect();

    validate(&rows, r, &rays, &lineality)?;
    Ok(DoubleDescription { rays, lineality })
}

/// One ray of an intermediate description: integer coordinates plus the set
/// of processed rows it is tight on, as a bitmask indexed by processing
/// order.
struct Ray {
    v: Vec<BigInt>,
    mask: u128,
}

/// Double description on a pointed system: `rows` has full column rank `r`.
fn pointed_dd(rows: &[Vec<BigInt>], r: usize) -> Result<Vec<Vec<BigInt>>> {
    // Sparser and lexicographically smaller rows first; this fixes both the
    // seed basis and the insertion order, making the run deterministic.
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| {
        (
            rows[i].iter().filter(|x| !x.is_zero()).count(),
            rows[i].clone(),
        )
    });

    // Greedy full-rank seed basis.
    let mut basis: Vec<usize> = Vec::new();
    let mut rest: Vec<usize> = Vec::new();
    for &i in &order {
        if basis.len() < r {
            let mut candidate: Vec<usize> = basis.clone();
            candidate.push(i);
            let m = Mat::from_rows(rat_rows(
                &candidate.iter().map(|&k| rows[k].clone()).collect::<Vec<_>>(),
            ))?;
            if m.rank() == candidate.len() {
                basis.push(i);
                continue;
            }
        }
        rest.push(i);
    }
    if basis.len() != r {
        return Err(Error::internal("restricted cone system lost rank"));
    }

    // Seed rays: the columns of the basis inverse, cleared to integers.
    // Column j pairs to 1 with basis row j and to 0 with the others, so all
    // seed rays are feasible for the basis subsystem.
    let bmat = Mat::from_rows(rat_rows(
        &basis.iter().map(|&k| rows[k].clone()).collect::<Vec<_>>(),
    ))?;
    let binv = bmat
        .inverse()
        .ok_or_else(|| Error::internal("seed basis is singular despite rank check"))?;
    let mut processed: Vec<usize> = basis.clone();
    let mut rays: Vec<Ray> = (0..r)
        .map(|j| {
            let col: Vec<Rat> = (0..r).map(|i| binv.at(i, j).clone()).collect();
            let lcm = col
                .iter()
                .fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            let ints: Vec<BigInt> = col.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            linalg::primitive(ints)
        })
        .map(|v| {
            let mask = tight_mask(&v, &processed, rows);
            Ray { v, mask }
        })
        .collect();

    for &ri in &rest {
        let row = &rows[ri];
        let bit = processed.len();
        let mut positive: Vec<Ray> = Vec::new();
        let mut zero: Vec<Ray> = Vec::new();
        let mut negative: Vec<Ray> = Vec::new();
        for ray in rays {
            let d = dot(row, &ray.v);
            if d.is_zero() {
                zero.push(Ray { v: ray.v, mask: ray.mask | (1 << bit) });
            } else if d.is_positive() {
                positive.push(ray);
            } else {
                negative.push(ray);
            }
        }

        let mut created: Vec<Ray> = Vec::new();
        for p in &positive {
            for nray in &negative {
                let t = p.mask & nray.mask;
                // Rank of the common tight set is at most its size; adjacent
                // pairs need rank r-2, so small intersections can be skipped
                // without the third-ray scan.
                if (t.count_ones() as usize) + 2 < r {
                    continue;
                }
                let covered = positive
                    .iter()
                    .chain(zero.iter())
                    .chain(negative.iter())
                    .any(|q| {
                        !std::ptr::eq(q, p)
                            && !std::ptr::eq(q, nray)
                            && t & !q.mask == 0
                    });
                if covered {
                    continue;
                }
                let dp = dot(row, &p.v);
                let dn = dot(row, &nray.v);
                let w: Vec<BigInt> = nray
                    .v
                    .iter()
                    .zip(&p.v)
                    .map(|(nc, pc)| &dp * nc - &dn * pc)
                    .collect();
                let w = linalg::primitive(w);
                let mut tight_rows = processed.clone();
                tight_rows.push(ri);
                let mask = tight_mask(&w, &tight_rows, rows);
                created.push(Ray { v: w, mask });
            }
        }

        rays = zero;
        rays.extend(positive);
        rays.extend(created);
        processed.push(ri);
    }

    Ok(rays.into_iter().map(|ray| ray.v).collect())
}

fn tight_mask(v: &[BigInt], processed: &[usize], rows: &[Vec<BigInt>]) -> u128 {
    let mut mask = 0u128;
    for (pos, &idx) in processed.iter().enumerate() {
        if dot(&rows[idx], v).is_zero() {
            mask |= 1 << pos;
        }
    }
    mask
}

/// Certifies the output: every lineality vector is in the kernel, every ray
/// is feasible, primitive, and tight on a subsystem of rank exactly
/// rank(A) - 1, which is the extremality certificate for a pointed quotient.
fn validate(
    rows: &[Vec<BigInt>],
    rank: usize,
    rays: &[Vec<BigInt>],
    lineality: &[Vec<BigInt>],
) -> Result<()> {
    for l in lineality {
        if rows.iter().any(|row| !dot(row, l).is_zero()) {
            return Err(Error::internal("lineality vector not in the kernel"));
        }
    }
    for ray in rays {
        if ray.iter().all(|x| x.is_zero()) {
            return Err(Error::internal("zero vector reported as a ray"));
        }
        if linalg::content(ray) != BigInt::from(1) {
            return Err(Error::internal("non-primitive ray in output"));
        }
        let mut tight: Vec<Vec<BigInt>> = Vec::new();
        for row in rows {
            let d = dot(row, ray);
            if d.is_negative() {
                return Err(Error::internal(format!("ray {ray:?} violates an inequality")));
            }
            if d.is_zero() {
                tight.push(row.clone());
            }
        }
        if rank >= 1 {
            let tight_rank = if tight.is_empty() {
                0
            } else {
                Mat::from_rows(rat_rows(&tight))?.rank()
            };
            if tight_rank != rank - 1 {
                return Err(Error::internal(format!(
                    "ray {ray:?} is tight on rank {tight_rank}, expected {}",
                    rank - 1
                )));
            }
        }
    }
    Ok(())
}

/// Membership test for the cone spanned by the given rays, via duality: the
/// polar {y : rays * y >= 0} is enumerated with the same engine, and x lies
/// in the spanned cone exactly when it pairs nonnegatively with every polar
/// ray and orthogonally with the polar lineality.
pub fn cone_of_rays_contains(rays: &[Vec<BigInt>], x: &[BigInt]) -> Result<bool> {
    if rays.is_empty() {
        return Ok(x.iter().all(|c| c.is_zero()));
    }
    let polar = extremal_rays_of(rays)?;
    Ok(polar.rays.iter().all(|row| !dot(row, x).is_negative())
        && polar.lineality.iter().all(|l| dot(l, x).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rays_of(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        extremal_rays_of(&rows.iter().map(|r| iv(r)).collect::<Vec<_>>())
            .unwrap()
            .rays
    }

    #[test]
    fn orthant_rays_are_the_standard_basis() {
        let rays = rays_of(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(rays, vec![iv(&[0, 0, 1]), iv(&[0, 1, 0]), iv(&[1, 0, 0])]);
    }

    #[test]
    fn redundant_rows_do_not_change_the_answer() {
        let plain = rays_of(&[&[1, 0], &[0, 1]]);
        let padded = rays_of(&[&[1, 0], &[0, 1], &[1, 1], &[2, 3], &[1, 0]]);
        assert_eq!(plain, padded, "x+y >= 0 and friends are implied by the orthant");
    }

    #[test]
    fn a_sliced_orthant_gains_a_diagonal_ray() {
        // x >= 0, y >= 0, x - y >= 0 in the plane: rays (1,0) and (1,1).
        let rays = rays_of(&[&[1, 0], &[0, 1], &[1, -1]]);
        assert_eq!(rays, vec![iv(&[1, 0]), iv(&[1, 1])]);
    }

    #[test]
    fn halfspace_has_lineality_and_one_ray() {
        let dd = extremal_rays_of(&[iv(&[1, 0])]).unwrap();
        assert_eq!(dd.rays, vec![iv(&[1, 0])]);
        assert_eq!(dd.lineality, vec![iv(&[0, 1])], "the y-axis is free");
    }

    #[test]
    fn opposing_constraints_collapse_to_a_point() {
        // x >= 0, y >= 0, -x-y >= 0 forces the origin.
        let dd = extremal_rays_of(&[iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -1])]).unwrap();
        assert!(dd.rays.is_empty(), "only the origin satisfies these");
        assert!(dd.lineality.is_empty());
    }

    #[test]
    fn row_order_and_scaling_are_irrelevant() {
        let base = rays_of(&[&[1, -12, 1], &[0, 2, -1], &[0, 0, 1]]);
        let shuffled = rays_of(&[&[0, 0, 7], &[2, -24, 2], &[0, 2, -1]]);
        assert_eq!(base, shuffled);
    }

    #[test]
    fn genus3_cone_has_the_three_known_rays() {
        let rays = rays_of(&[&[1, -12, 1], &[0, 2, -1], &[0, 0, 1]]);
        assert_eq!(
            rays,
            vec![iv(&[1, 0, 0]), iv(&[10, 1, 2]), iv(&[12, 1, 0])],
            "lambda, the full boundary contraction, and the delta0 contraction"
        );
    }

    #[test]
    fn duality_membership_agrees_with_hand_checks() {
        let rays = vec![iv(&[1, 0, 0]), iv(&[10, 1, 2]), iv(&[12, 1, 0])];
        assert!(cone_of_rays_contains(&rays, &iv(&[23, 2, 2])).unwrap(), "sum of rays");
        assert!(cone_of_rays_contains(&rays, &iv(&[1, 0, 0])).unwrap(), "a ray itself");
        assert!(
            !cone_of_rays_contains(&rays, &iv(&[0, 0, -1])).unwrap(),
            "negative delta1 direction is outside"
        );
        assert!(
            !cone_of_rays_contains(&rays, &iv(&[0, 1, 0])).unwrap(),
            "outside the span direction test"
        );
    }

    #[test]
    fn four_dimensional_cross_check_with_a_known_count() {
        // {x in R^4 : x_i >= 0, sum x_i >= 2 x_j for each j}: the extremal
        // rays are the six 0/1 vectors with exactly two ones. Vectors with
        // three or four ones lie inside, e.g. (1,1,1,0) is tight only on
        // x_4 >= 0 and splits as half the sum of its three pair supports.
        let mut rows: Vec<Vec<BigInt>> = (0..4)
            .map(|i| {
                let mut e = vec![0i64; 4];
                e[i] = 1;
                iv(&e)
            })
            .collect();
        for j in 0..4 {
            let mut e = vec![1i64; 4];
            e[j] = -1;
            rows.push(iv(&e));
        }
        let dd = extremal_rays_of(&rows).unwrap();
        assert_eq!(dd.rays.len(), 6, "one ray per coordinate pair");
        for ray in &dd.rays {
            let ones = ray.iter().filter(|x| !x.is_zero()).count();
            assert_eq!(ones, 2, "unexpected ray {ray:?}");
            assert!(ray.iter().all(|x| x.is_zero() || *x == BigInt::from(1)));
        }
    }
}
