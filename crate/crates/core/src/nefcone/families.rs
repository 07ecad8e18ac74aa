//! One-parameter test families of stable curves and the nef-cone
//! inequalities they impose.
//!
//! A divisor a*lambda - sum_i b_i*delta_i on the moduli space of stable
//! genus-g curves pairs with each one-dimensional family below to a linear
//! form in (a, b_0, ..., b_h), h = g/2 rounded down. Nonnegativity of these
//! forms is necessary for nefness. The families come from the two
//! one-dimensional moduli of pointed curves: a moving one-pointed curve of
//! genus one (an elliptic pencil), or a moving four-pointed rational curve,
//! with general fixed curves attached; the family is determined by the
//! genera of the attached parts and by how points are glued.
//!
//! Boundary indices are folded by the symmetry delta_i = delta_{g-i}, so
//! every condition is expressed in b_0..b_h.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::linalg;
use crate::{Error, Result};

/// Half genus: the largest index of an independent boundary class.
pub fn half_genus(g: u32) -> usize {
    (g / 2) as usize
}

/// Number of coordinates of an inequality row: a plus b_0..b_h.
pub fn basis_dim(g: u32) -> usize {
    half_genus(g) + 2
}

fn fold(g: u32, i: u32) -> usize {
    debug_assert!(i >= 1 && i <= g - 1, "foldable index out of range");
    i.min(g - i) as usize
}

/// A concrete one-parameter family, tagged A through H by its shape.
///
/// Parameters are the genera of the attached fixed curves; every variant
/// stores the ambient genus. Construction is through `family_instances` or
/// the explicit constructors, both of which validate the parameter ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyInstance {
    /// A: an elliptic pencil with a one-pointed curve of genus g-1 attached.
    EllipticTail { genus: u32 },
    /// B: the moving rational curve closed up by one four-pointed curve of
    /// genus g-3.
    SpineOnly { genus: u32 },
    /// C: a three-pointed curve of genus g-2-j and a one-pointed curve of
    /// genus j attached.
    OneTail { genus: u32, j: u32 },
    /// D: two-pointed curves of genus i and g-2-i attached.
    TwoBridges { genus: u32, i: u32 },
    /// E: a two-pointed curve of genus g-1-j-k and one-pointed curves of
    /// genus j and k attached.
    BridgeTwoTails { genus: u32, j: u32, k: u32 },
    /// F: four one-pointed curves of genus i, j, k, l attached.
    FourTails { genus: u32, i: u32, j: u32, k: u32, l: u32 },
    /// G: two of the four points identified, a two-pointed curve of genus
    /// g-2 on the other two.
    LoopBridge { genus: u32 },
    /// H: two of the four points identified, one-pointed curves of genus i
    /// and g-1-i on the other two.
    LoopTwoTails { genus: u32, i: u32 },
}

impl FamilyInstance {
    pub fn genus(&self) -> u32 {
        match *self {
            FamilyInstance::EllipticTail { genus }
            | FamilyInstance::SpineOnly { genus }
            | FamilyInstance::OneTail { genus, .. }
            | FamilyInstance::TwoBridges { genus, .. }
            | FamilyInstance::BridgeTwoTails { genus, .. }
            | FamilyInstance::FourTails { genus, .. }
            | FamilyInstance::LoopBridge { genus }
            | FamilyInstance::LoopTwoTails { genus, .. } => genus,
        }
    }

    /// Single-letter tag, A through H.
    pub fn label(&self) -> char {
        match self {
            FamilyInstance::EllipticTail { .. } => 'A',
            FamilyInstance::SpineOnly { .. } => 'B',
            FamilyInstance::OneTail { .. } => 'C',
            FamilyInstance::TwoBridges { .. } => 'D',
            FamilyInstance::BridgeTwoTails { .. } => 'E',
            FamilyInstance::FourTails { .. } => 'F',
            FamilyInstance::LoopBridge { .. } => 'G',
            FamilyInstance::LoopTwoTails { .. } => 'H',
        }
    }

    /// Human description of the construction.
    pub fn describe(&self) -> String {
        let g = self.genus();
        match *self {
            FamilyInstance::EllipticTail { .. } => format!(
                "elliptic pencil with a one-pointed curve of genus {} attached",
                g - 1
            ),
            FamilyInstance::SpineOnly { .. } => format!(
                "moving 4-pointed rational curve closed up by a 4-pointed curve of genus {}",
                g - 3
            ),
            FamilyInstance::OneTail { j, .. } => format!(
                "moving 4-pointed rational curve with a 3-pointed curve of genus {} \
                 and a 1-pointed curve of genus {j} attached",
                g - 2 - j
            ),
            FamilyInstance::TwoBridges { i, .. } => format!(
                "moving 4-pointed rational curve with 2-pointed curves of genus {i} \
                 and {} attached",
                g - 2 - i
            ),
            FamilyInstance::BridgeTwoTails { j, k, .. } => format!(
                "moving 4-pointed rational curve with a 2-pointed curve of genus {} \
                 and 1-pointed curves of genus {j} and {k} attached",
                g - 1 - j - k
            ),
            FamilyInstance::FourTails { i, j, k, l, .. } => format!(
                "moving 4-pointed rational curve with 1-pointed curves of genus \
                 {i}, {j}, {k}, {l} attached"
            ),
            FamilyInstance::LoopBridge { .. } => format!(
                "moving 4-pointed rational curve with two points identified and a \
                 2-pointed curve of genus {} attached",
                g - 2
            ),
            FamilyInstance::LoopTwoTails { i, .. } => format!(
                "moving 4-pointed rational curve with two points identified and \
                 1-pointed curves of genus {i} and {} attached",
                g - 1 - i
            ),
        }
    }

    fn check(&self) -> Result<()> {
        let g = self.genus();
        if g < 3 {
            return Err(Error::domain("families need genus at least 3"));
        }
        let ok = match *self {
            FamilyInstance::EllipticTail { .. } | FamilyInstance::LoopBridge { .. } => true,
            FamilyInstance::SpineOnly { .. } => g >= 3,
            FamilyInstance::OneTail { j, .. } => j >= 1 && j <= g - 2,
            FamilyInstance::TwoBridges { i, .. } => i >= 1 && i + 1 <= g - 2,
            FamilyInstance::BridgeTwoTails { j, k, .. } => {
                j >= 1 && j <= k && j + k <= g - 2
            }
            FamilyInstance::FourTails { i, j, k, l, .. } => {
                i >= 1 && i <= j && j <= k && k <= l && i + j + k + l == g
            }
            FamilyInstance::LoopTwoTails { i, .. } => i >= 1 && 2 * i <= g - 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("family parameters out of range: {self}")))
        }
    }

    /// Coefficient row of the necessary condition, over (a, b_0, ..., b_h).
    /// The condition is row . (a, b_0, ..., b_h) >= 0.
    pub fn condition_row(&self) -> Result<Vec<BigInt>> {
        self.check()?;
        let g = self.genus();
        let mut row = vec![BigInt::zero(); basis_dim(g)];
        let mut bump = |idx: usize, amount: i64| {
            row[idx + 1] += BigInt::from(amount);
        };
        match *self {
            FamilyInstance::EllipticTail { .. } => {
                bump(0, -12);
                bump(fold(g, 1), 1);
                row[0] = BigInt::from(1);
            }
            FamilyInstance::SpineOnly { .. } => bump(0, 1),
            FamilyInstance::OneTail { j, .. } => bump(fold(g, j), 1),
            FamilyInstance::TwoBridges { i, .. } => {
                bump(0, 2);
                bump(fold(g, i + 1), -1);
            }
            FamilyInstance::BridgeTwoTails { j, k, .. } => {
                bump(fold(g, j), 1);
                bump(fold(g, k), 1);
                bump(fold(g, j + k), -1);
            }
            FamilyInstance::FourTails { i, j, k, l, .. } => {
                bump(fold(g, i), 1);
                bump(fold(g, j), 1);
                bump(fold(g, k), 1);
                bump(fold(g, l), 1);
                bump(fold(g, i + j), -1);
                bump(fold(g, i + k), -1);
                bump(fold(g, i + l), -1);
            }
            FamilyInstance::LoopBridge { .. } => {
                bump(0, 2);
                bump(1, -1);
            }
            FamilyInstance::LoopTwoTails { i, .. } => {
                bump(fold(g, i), 1);
                bump(fold(g, g - 1 - i), 1);
                bump(1, -1);
            }
        }
        Ok(row)
    }

    /// Degrees of (lambda, delta_0, ..., delta_h) on the family. The
    /// condition row is recovered as (deg lambda, -deg delta_0, ...).
    pub fn degrees(&self) -> Result<Vec<BigInt>> {
        let row = self.condition_row()?;
        Ok(row
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { c.clone() } else { -c })
            .collect())
    }
}

impl fmt::Display for FamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyInstance::EllipticTail { .. }
            | FamilyInstance::SpineOnly { .. }
            | FamilyInstance::LoopBridge { .. } => write!(f, "{}", self.label()),
            FamilyInstance::OneTail { j, .. } => write!(f, "C(j={j})"),
            FamilyInstance::TwoBridges { i, .. } => write!(f, "D(i={i})"),
            FamilyInstance::BridgeTwoTails { j, k, .. } => write!(f, "E(j={j},k={k})"),
            FamilyInstance::FourTails { i, j, k, l, .. } => {
                write!(f, "F({i},{j},{k},{l})")
            }
            FamilyInstance::LoopTwoTails { i, .. } => {
                write!(f, "H(i={i},j={})", self.genus() - 1 - i)
            }
        }
    }
}

/// All families for genus g, in tag order A..H with parameters ascending.
pub fn family_instances(g: u32) -> Result<Vec<FamilyInstance>> {
    if g < 3 {
        return Err(Error::domain("families need genus at least 3"));
    }
    let mut out = vec![FamilyInstance::EllipticTail { genus: g }];
    out.push(FamilyInstance::SpineOnly { genus: g });
    for j in 1..=g - 2 {
        out.push(FamilyInstance::OneTail { genus: g, j });
    }
    for i in 1..=g.saturating_sub(3) {
        out.push(FamilyInstance::TwoBridges { genus: g, i });
    }
    for j in 1..=g - 2 {
        for k in j..=g - 2 - j {
            out.push(FamilyInstance::BridgeTwoTails { genus: g, j, k });
        }
    }
    for i in 1..=g / 4 {
        for j in i..=g {
            for k in j..=g {
                let rest = g as i64 - (i + j + k) as i64;
                if rest >= k as i64 {
                    let l = rest as u32;
                    out.push(FamilyInstance::FourTails { genus: g, i, j, k, l });
                }
            }
        }
    }
    out.push(FamilyInstance::LoopBridge { genus: g });
    for i in 1..=(g - 1) / 2 {
        out.push(FamilyInstance::LoopTwoTails { genus: g, i });
    }
    for inst in &out {
        inst.check()?;
    }
    Ok(out)
}

/// One inequality of the nef cone with the family that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefInequality {
    /// Coefficients over (a, b_0, ..., b_h), content 1.
    pub coeffs: Vec<BigInt>,
    /// First family in A..H enumeration order yielding this inequality.
    pub source: FamilyInstance,
}

impl fmt::Display for NefInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = if i == 0 { "a".to_string() } else { format!("b{}", i - 1) };
            let mag = c.magnitude();
            let unit = *mag == num_bigint::BigUint::from(1u32);
            if !wrote {
                if c < &BigInt::zero() {
                    write!(f, "-")?;
                }
            } else if c < &BigInt::zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if unit {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}{name}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " >= 0")
    }
}

/// The canonical inequality list for genus g.
///
/// Families A and C through H are instantiated in tag order and duplicates
/// are dropped, keeping the first producer. Family B contributes b_0 >= 0,
/// which is already forced by G and C(j=1) (from 2b_0 >= b_1 >= 0), so it
/// is omitted from the canonical list.
pub fn nef_inequalities(g: u32) -> Result<Vec<NefInequality>> {
    let mut out: Vec<NefInequality> = Vec::new();
    for inst in family_instances(g)? {
        if matches!(inst, FamilyInstance::SpineOnly { .. }) {
            continue;
        }
        let row = linalg::primitive(inst.condition_row()?);
        if row.iter().all(|c| c.is_zero()) {
            return Err(Error::internal(format!("family {inst} gave a trivial condition")));
        }
        if out.iter().all(|known| known.coeffs != row) {
            out.push(NefInequality { coeffs: row, source: inst });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rows(g: u32) -> Vec<Vec<BigInt>> {
        nef_inequalities(g).unwrap().into_iter().map(|q| q.coeffs).collect()
    }

    #[test]
    fn genus3_has_exactly_three_conditions() {
        let got = rows(3);
        assert_eq!(
            got,
            vec![iv(&[1, -12, 1]), iv(&[0, 0, 1]), iv(&[0, 2, -1])],
            "elliptic tail, b1 >= 0, and 2b0 >= b1"
        );
    }

    #[test]
    fn genus4_has_the_seven_known_conditions() {
        let got: std::collections::BTreeSet<_> = rows(4).into_iter().collect();
        let want: std::collections::BTreeSet<_> = vec![
            iv(&[1, -12, 1, 0]),
            iv(&[0, 2, -1, 0]),
            iv(&[0, 2, 0, -1]),
            iv(&[0, 0, 1, 0]),
            iv(&[0, 0, 0, 1]),
            iv(&[0, 0, 2, -1]),
            iv(&[0, 0, 4, -3]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn genus5_count_and_sample_members() {
        let got = rows(5);
        assert_eq!(got.len(), 8, "genus 5 canonical list");
        assert!(got.contains(&iv(&[0, 0, -1, 2])), "2b2 >= b1 from the loop family");
        assert!(got.contains(&iv(&[0, 0, 3, -2])), "3b1 >= 2b2 from four tails");
    }

    #[test]
    fn first_producer_attribution_matches_the_tag_order() {
        let ineqs = nef_inequalities(4).unwrap();
        let labels: Vec<(String, char)> = ineqs
            .iter()
            .map(|q| (q.to_string(), q.source.label()))
            .collect();
        assert_eq!(
            labels,
            vec![
                ("a - 12b0 + b1 >= 0".to_string(), 'A'),
                ("b1 >= 0".to_string(), 'C'),
                ("b2 >= 0".to_string(), 'C'),
                ("2b0 - b2 >= 0".to_string(), 'D'),
                ("2b1 - b2 >= 0".to_string(), 'E'),
                ("4b1 - 3b2 >= 0".to_string(), 'F'),
                ("2b0 - b1 >= 0".to_string(), 'G'),
            ]
        );
    }

    #[test]
    fn family_degrees_recover_the_stated_values() {
        let a = FamilyInstance::EllipticTail { genus: 5 };
        assert_eq!(a.degrees().unwrap(), iv(&[1, 12, -1, 0]));
        let b = FamilyInstance::SpineOnly { genus: 5 };
        assert_eq!(b.degrees().unwrap(), iv(&[0, -1, 0, 0]));
        let d = FamilyInstance::TwoBridges { genus: 5, i: 1 };
        assert_eq!(d.degrees().unwrap(), iv(&[0, -2, 0, 1]));
    }

    #[test]
    fn folding_sends_high_indices_to_their_mirrors() {
        // Genus 5: a tail of genus 3 meets the boundary in delta_2.
        let c = FamilyInstance::OneTail { genus: 5, j: 3 };
        assert_eq!(c.condition_row().unwrap(), iv(&[0, 0, 0, 1]));
        // Genus 5 loop with two tails of genus 2: 2b2 - b1 >= 0.
        let h = FamilyInstance::LoopTwoTails { genus: 5, i: 2 };
        assert_eq!(h.condition_row().unwrap(), iv(&[0, 0, -1, 2]));
    }

    #[test]
    fn out_of_range_parameters_are_rejected() {
        let bad = FamilyInstance::OneTail { genus: 4, j: 3 };
        assert!(bad.condition_row().is_err(), "tail genus must leave room for the spine");
        assert!(nef_inequalities(2).is_err(), "genus below 3 has no such basis");
        let bad_quad = FamilyInstance::FourTails { genus: 6, i: 2, j: 2, k: 1, l: 1 };
        assert!(bad_quad.condition_row().is_err(), "parameters must be sorted");
    }

    #[test]
    fn family_enumeration_counts_for_small_genus() {
        // Genus 3: A, B, C(1). Nothing else fits.
        let fams = family_instances(3).unwrap();
        assert_eq!(fams.len(), 5, "A, B, C(1), G, H(1,1)");
        // Genus 4 gains D, E, F instances.
        assert_eq!(family_instances(4).unwrap().len(), 9);
    }
}
