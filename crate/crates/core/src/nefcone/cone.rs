//! Polyhedral cones in divisor coordinates and the nef cone itself.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::linalg;
use crate::{Error, Result};

use super::dd::{self, DoubleDescription};
use super::families::{self, NefInequality};

/// A rational polyhedral cone {x : rows * x >= 0}, with its extremal rays
/// and lineality space computed eagerly on construction.
///
/// Rows are stored content-1 with zero rows dropped and duplicates removed;
/// rays are primitive and lex-sorted, so two cones with the same point set
/// described differently still compare equal ray-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
}

impl Cone {
    pub fn from_inequalities(rows_in: Vec<Vec<BigInt>>) -> Result<Cone> {
        let Some(first) = rows_in.first() else {
            return Err(Error::domain("a cone needs at least one inequality"));
        };
        let dim = first.len();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for r in &rows_in {
            if r.len() != dim {
                return Err(Error::domain("ragged inequality rows"));
            }
            let p = linalg::primitive(r.clone());
            if p.iter().all(|x| x.is_zero()) {
                continue;
            }
            if !rows.contains(&p) {
                rows.push(p);
            }
        }
        if rows.is_empty() {
            return Err(Error::domain("all inequality rows were zero"));
        }
        let DoubleDescription { rays, lineality } = dd::extremal_rays_of(&rows)?;
        Ok(Cone { dim, rows, rays, lineality })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The normalized inequality rows actually used.
    pub fn inequalities(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Extremal rays, primitive and lex-sorted.
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Membership, straight from the inequality description.
    pub fn contains(&self, x: &[BigInt]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::domain("point dimension mismatch"));
        }
        Ok(self
            .rows
            .iter()
            .all(|row| !row.iter().zip(x).map(|(a, b)| a * b).sum::<BigInt>().is_negative()))
    }
}

/// The nef cone of the moduli space of stable genus-g curves, cut out by
/// the canonical family inequalities in coordinates (a, b_0, ..., b_h).
pub fn nef_cone(g: u32) -> Result<Cone> {
    let rows = families::nef_inequalities(g)?
        .into_iter()
        .map(|q| q.coeffs)
        .collect();
    Cone::from_inequalities(rows)
}

/// The canonical inequalities together with the cone they cut out.
pub fn nef_cone_with_sources(g: u32) -> Result<(Vec<NefInequality>, Cone)> {
    let ineqs = families::nef_inequalities(g)?;
    let cone = Cone::from_inequalities(ineqs.iter().map(|q| q.coeffs.clone()).collect())?;
    Ok((ineqs, cone))
}

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

fn subscript(i: usize) -> String {
    i.to_string()
        .chars()
        .map(|c| SUBSCRIPTS[c.to_digit(10).expect("decimal digit") as usize])
        .collect()
}

/// Renders a ray (a, b_0, ..., b_h) as the divisor a*lambda - sum b_i*delta_i,
/// e.g. (98, 9, 10, 16, 18) becomes "98λ−9δ₀−10δ₁−16δ₂−18δ₃".
///
/// Unit coefficients are left implicit and the minus sign is U+2212.
pub fn ray_to_divisor(ray: &[BigInt]) -> String {
    let mut out = String::new();
    let one = BigInt::from(1);
    let push_term = |coeff: &BigInt, symbol: String, out: &mut String| {
        if coeff.is_zero() {
            return;
        }
        if coeff.is_negative() {
            out.push('−');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = coeff.abs();
        if mag != one {
            out.push_str(&mag.to_string());
        }
        out.push_str(&symbol);
    };
    if let Some(a) = ray.first() {
        push_term(a, "λ".to_string(), &mut out);
    }
    for (i, b) in ray.iter().skip(1).enumerate() {
        // The divisor coefficient of delta_i is minus the ray coordinate.
        push_term(&-b, format!("δ{}", subscript(i)), &mut out);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn genus3_nef_cone_rays() {
        let cone = nef_cone(3).unwrap();
        assert!(cone.is_pointed());
        assert_eq!(
            cone.rays(),
            &[iv(&[1, 0, 0]), iv(&[10, 1, 2]), iv(&[12, 1, 0])]
        );
    }

    #[test]
    fn genus4_nef_cone_rays() {
        let cone = nef_cone(4).unwrap();
        assert_eq!(
            cone.rays(),
            &[
                iv(&[1, 0, 0, 0]),
                iv(&[10, 1, 2, 0]),
                iv(&[10, 1, 2, 2]),
                iv(&[12, 1, 0, 0]),
                iv(&[21, 2, 3, 4]),
            ]
        );
    }

    #[test]
    fn genus5_nef_cone_rays() {
        let cone = nef_cone(5).unwrap();
        assert_eq!(
            cone.rays(),
            &[
                iv(&[1, 0, 0, 0]),
                iv(&[10, 1, 2, 1]),
                iv(&[10, 1, 2, 2]),
                iv(&[12, 1, 0, 0]),
                iv(&[32, 3, 4, 6]),
            ]
        );
    }

    #[test]
    fn genus6_nef_cone_rays() {
        let cone = nef_cone(6).unwrap();
        assert_eq!(
            cone.rays(),
            &[
                iv(&[1, 0, 0, 0, 0]),
                iv(&[10, 1, 2, 0, 2]),
                iv(&[10, 1, 2, 2, 0]),
                iv(&[10, 1, 2, 2, 2]),
                iv(&[12, 1, 0, 0, 0]),
                iv(&[32, 3, 4, 6, 6]),
                iv(&[98, 9, 10, 16, 18]),
            ]
        );
    }

    #[test]
    fn higher_genus_ray_counts() {
        assert_eq!(nef_cone(7).unwrap().rays().len(), 10);
        assert_eq!(nef_cone(8).unwrap().rays().len(), 20);
        assert_eq!(nef_cone(9).unwrap().rays().len(), 21);
    }

    #[test]
    fn three_rays_persist_in_every_genus() {
        for g in 3..=9u32 {
            let cone = nef_cone(g).unwrap();
            let h = families::half_genus(g);
            let mut lambda = vec![0i64; h + 2];
            lambda[0] = 1;
            let mut delta0 = vec![0i64; h + 2];
            delta0[0] = 12;
            delta0[1] = 1;
            let mut mixed = vec![2i64; h + 2];
            mixed[0] = 10;
            mixed[1] = 1;
            for want in [lambda, delta0, mixed] {
                let want = iv(&want);
                assert!(
                    cone.rays().contains(&want),
                    "ray {want:?} missing in genus {g}"
                );
            }
        }
    }

    #[test]
    fn divisor_rendering_matches_the_usual_notation() {
        assert_eq!(ray_to_divisor(&iv(&[1, 0, 0])), "λ");
        assert_eq!(ray_to_divisor(&iv(&[12, 1, 0])), "12λ−δ₀");
        assert_eq!(ray_to_divisor(&iv(&[10, 1, 2, 1])), "10λ−δ₀−2δ₁−δ₂");
        assert_eq!(
            ray_to_divisor(&iv(&[98, 9, 10, 16, 18])),
            "98λ−9δ₀−10δ₁−16δ₂−18δ₃"
        );
        assert_eq!(ray_to_divisor(&iv(&[0, -1, 0])), "δ₀", "sign flip on delta");
    }

    #[test]
    fn nef_membership_distinguishes_inside_from_outside() {
        let cone = nef_cone(3).unwrap();
        assert!(cone.contains(&iv(&[23, 2, 2])).unwrap(), "sum of two rays");
        assert!(!cone.contains(&iv(&[1, 1, 0])).unwrap(), "fails the elliptic tail row");
    }

    #[test]
    fn inequality_normalization_dedupes_scaled_rows() {
        let cone = Cone::from_inequalities(vec![
            iv(&[2, 0]),
            iv(&[1, 0]),
            iv(&[0, 3]),
            iv(&[0, 0]),
        ])
        .unwrap();
        assert_eq!(cone.inequalities(), &[iv(&[1, 0]), iv(&[0, 1])]);
    }
}
