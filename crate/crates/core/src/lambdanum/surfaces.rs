//! The test-surface linear system for the closed genus-4 hyperelliptic class.
//!
//! The class is an unknown combination of kappa_2, lambda^2 and twelve
//! codimension-two boundary classes. The kappa_2 and lambda^2 coefficients
//! are imported (they come from the interior of the moduli space); the
//! twelve boundary coefficients are constrained by pairing the combination
//! against test surfaces whose intersection numbers are known. Each surface
//! contributes one linear equation. The system happens to determine only
//! seven of the twelve unknowns, which is fine downstream: the undetermined
//! ones multiply classes killed by the lambda powers used there.

use std::collections::BTreeMap;

use crate::exact::linalg::Mat;
use crate::exact::Rat;
use crate::{Error, Result};

use super::inputs::{CitedInputs, Surface};

/// Unknown coefficient names paired with the boundary classes they
/// multiply, in the order the equations list them.
pub const ANSATZ_CLASSES: [(&str, &str); 12] = [
    ("coef.c", "lambda*delta_0"),
    ("coef.d", "lambda*delta_1"),
    ("coef.e", "delta_0^2"),
    ("coef.f", "delta_0*delta_1"),
    ("coef.g", "delta_0*delta_2"),
    ("coef.h", "delta_1^2"),
    ("coef.i", "delta_1*delta_2"),
    ("coef.j", "delta_2^2"),
    ("coef.k", "delta_00"),
    ("coef.l", "delta_01a"),
    ("coef.m", "gamma_1"),
    ("coef.n", "delta_11"),
];

// Classes whose coefficients are already known, with the names of the
// cited scalars carrying them.
const KNOWN_CLASSES: [(&str, &str); 2] = [
    ("kappa_2", "hyperelliptic_ansatz_kappa2"),
    ("lambda^2", "hyperelliptic_ansatz_lambda_sq"),
];

/// Outcome of solving a surface system: the coefficients the equations pin
/// down uniquely, and the ones they leave free.
#[derive(Clone, Debug)]
pub struct SolvedCoefficients {
    determined: BTreeMap<String, Rat>,
    free: Vec<String>,
    rank: usize,
    n_equations: usize,
}

impl SolvedCoefficients {
    /// Coefficients pinned down uniquely by the equations.
    pub fn determined(&self) -> &BTreeMap<String, Rat> {
        &self.determined
    }

    /// Coefficient names the equations leave free, in ansatz order.
    pub fn free(&self) -> &[String] {
        &self.free
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_equations(&self) -> usize {
        self.n_equations
    }

    /// A determined coefficient by name; free or unknown names error.
    pub fn get(&self, name: &str) -> Result<&Rat> {
        self.determined.get(name).ok_or_else(|| {
            Error::domain(format!("coefficient {name:?} is not determined by these surfaces"))
        })
    }
}

/// One equation: the unknown coefficients weighted by the surface pairings
/// on the left, the target minus the known-coefficient contributions on the
/// right.
fn equation_of(surface: &Surface) -> Result<(Vec<Rat>, Rat)> {
    let inputs = CitedInputs::builtin();
    let row: Vec<Rat> =
        ANSATZ_CLASSES.iter().map(|(_, class)| surface.pairing(class)).collect();
    let mut rhs = surface.target().clone();
    for (class, scalar_name) in KNOWN_CLASSES {
        let coeff = inputs.scalar(scalar_name)?.value();
        rhs = rhs - coeff * &surface.pairing(class);
    }
    Ok((row, rhs))
}

/// Solves the system the given surfaces cut out.
pub fn solve(surfaces: &[&Surface]) -> Result<SolvedCoefficients> {
    if surfaces.is_empty() {
        return Err(Error::domain("no surfaces to solve against"));
    }
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(surfaces.len());
    let mut targets: Vec<Rat> = Vec::with_capacity(surfaces.len());
    for surface in surfaces {
        let (row, rhs) = equation_of(surface)?;
        rows.push(row);
        targets.push(rhs);
        // Catch contradictions as they appear so the report can name the
        // surface that introduced one.
        let coeffs = Mat::from_rows(rows.clone())?;
        let augmented = Mat::from_rows(
            rows.iter()
                .zip(&targets)
                .map(|(r, t)| r.iter().cloned().chain([t.clone()]).collect())
                .collect(),
        )?;
        if augmented.rank() > coeffs.rank() {
            return Err(Error::domain(format!(
                "surface {:?} contradicts the equations before it",
                surface.label()
            )));
        }
    }

    let n = ANSATZ_CLASSES.len();
    let mut augmented = Mat::from_rows(
        rows.iter()
            .zip(&targets)
            .map(|(r, t)| r.iter().cloned().chain([t.clone()]).collect())
            .collect(),
    )?;
    let pivots = augmented.rref();
    if pivots.contains(&n) {
        return Err(Error::internal(
            "inconsistency survived the incremental check",
        ));
    }

    // A pivot variable is determined exactly when its row involves no other
    // unknown; otherwise its value would shift with the free choices.
    let mut determined = BTreeMap::new();
    let mut solution = vec![Rat::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        let lone = (0..n).all(|c| c == p || augmented.at(r, c).is_zero());
        solution[p] = augmented.at(r, n).clone();
        if lone {
            determined.insert(ANSATZ_CLASSES[p].0.to_string(), augmented.at(r, n).clone());
        }
    }
    let free: Vec<String> = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|c| ANSATZ_CLASSES[c].0.to_string())
        .collect();

    // Setting the free coefficients to zero and the pivots to their reduced
    // values must satisfy every original equation exactly.
    for (i, (row, target)) in rows.iter().zip(&targets).enumerate() {
        let lhs: Rat = row.iter().zip(&solution).map(|(a, x)| a * x).sum();
        if &lhs != target {
            return Err(Error::internal(format!(
                "residual of the equation from surface {:?} is nonzero",
                surfaces[i].label()
            )));
        }
    }

    Ok(SolvedCoefficients { determined, free, rank: pivots.len(), n_equations: surfaces.len() })
}

/// Solves the full builtin system of seven test surfaces.
pub fn solve_test_surfaces() -> Result<SolvedCoefficients> {
    let all: Vec<&Surface> = CitedInputs::builtin().surfaces().iter().collect();
    solve(&all)
}

/// Solves the subsystem cut out by the named builtin surfaces.
pub fn solve_for(labels: &[&str]) -> Result<SolvedCoefficients> {
    let inputs = CitedInputs::builtin();
    let picked: Vec<&Surface> =
        labels.iter().map(|l| inputs.surface(l)).collect::<Result<_>>()?;
    solve(&picked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rat {
        s.parse().expect("test literal parses")
    }

    #[test]
    fn the_full_system_determines_seven_coefficients() {
        let solved = solve_test_surfaces().expect("system solves");
        let want: &[(&str, &str)] = &[
            ("coef.g", "3/5"),
            ("coef.h", "27/5"),
            ("coef.i", "36/5"),
            ("coef.j", "9"),
            ("coef.l", "1/5"),
            ("coef.m", "-6/5"),
            ("coef.n", "-12/5"),
        ];
        assert_eq!(solved.determined().len(), want.len(), "exactly seven determined");
        for (name, value) in want {
            assert_eq!(
                solved.get(name).expect("coefficient determined"),
                &rat(value),
                "{name} should come out as {value}"
            );
        }
        assert_eq!(
            solved.free(),
            ["coef.c", "coef.d", "coef.e", "coef.f", "coef.k"],
            "the five coefficients multiplying untested classes stay free"
        );
        assert_eq!(solved.rank(), 7, "seven independent equations");
        assert_eq!(solved.n_equations(), 7, "seven surfaces");
    }

    #[test]
    fn the_alpha_surface_alone_pins_down_only_one_coefficient() {
        let solved = solve_for(&["alpha"]).expect("single equation solves");
        assert_eq!(solved.determined().len(), 1, "one coefficient determined");
        assert_eq!(solved.get("coef.j").expect("j determined"), &rat("9"));
        assert_eq!(solved.rank(), 1, "one equation, rank one");
        assert!(solved.get("coef.g").is_err(), "g should not be determined yet");
    }

    #[test]
    fn three_surfaces_resolve_the_delta2_block() {
        let solved = solve_for(&["alpha", "zeta", "mu"]).expect("subsystem solves");
        assert_eq!(solved.get("coef.j").expect("j"), &rat("9"));
        assert_eq!(solved.get("coef.g").expect("g"), &rat("3/5"));
        assert_eq!(solved.get("coef.i").expect("i"), &rat("36/5"));
        assert_eq!(solved.determined().len(), 3, "exactly the delta_2 block");
    }

    #[test]
    fn unknown_labels_are_rejected() {
        assert!(solve_for(&["alpha", "omega"]).is_err(), "missing surface should error");
        assert!(solve_for(&[]).is_err(), "empty system should error");
    }
}
