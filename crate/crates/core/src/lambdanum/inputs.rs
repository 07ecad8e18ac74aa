//! Embedded externally sourced constants, each with a citation string.
//!
//! The whole lambda pipeline draws its imported numbers from one JSON
//! document compiled into the crate. Keeping them in a single place makes
//! the derived/cited boundary auditable: a result is fully recomputed
//! exactly when nothing from this module enters it.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::exact::Rat;
use crate::{Error, Result};

use super::surfaces::ANSATZ_CLASSES;

/// A named rational constant imported on outside authority.
#[derive(Clone, Debug, Deserialize)]
pub struct CitedScalar {
    name: String,
    value: Rat,
    citation: String,
}

impl CitedScalar {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    pub fn citation(&self) -> &str {
        &self.citation
    }
}

/// A linear combination of named classes imported on outside authority.
#[derive(Clone, Debug, Deserialize)]
pub struct ClassCombination {
    classes: Vec<String>,
    coeffs: Vec<Rat>,
    citation: String,
}

impl ClassCombination {
    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn citation(&self) -> &str {
        &self.citation
    }

    /// Iterates over (class name, coefficient) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&str, &Rat)> {
        self.classes.iter().map(String::as_str).zip(self.coeffs.iter())
    }

    pub fn coeff_of(&self, class: &str) -> Result<&Rat> {
        self.terms()
            .find(|(c, _)| *c == class)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::domain(format!("no class {class:?} in the combination")))
    }
}

/// One test surface: its intersection numbers with the candidate classes
/// and with the class being solved for.
#[derive(Clone, Debug, Deserialize)]
pub struct Surface {
    label: String,
    description: String,
    pairings: BTreeMap<String, Rat>,
    target: Rat,
    citation: String,
}

impl Surface {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Intersection number with the named class, zero when unlisted.
    pub fn pairing(&self, class: &str) -> Rat {
        self.pairings.get(class).cloned().unwrap_or_else(Rat::zero)
    }

    /// Intersection number with the class being solved for, taken for the
    /// coarse class (twice the orbifold reading).
    pub fn target(&self) -> &Rat {
        &self.target
    }

    pub fn citation(&self) -> &str {
        &self.citation
    }
}

#[derive(Deserialize)]
struct InputsRepr {
    name: String,
    description: String,
    scalars: Vec<CitedScalar>,
    genus3_hyperelliptic_class: ClassCombination,
    kernel_relation: ClassCombination,
    surfaces: Vec<Surface>,
}

/// The full set of imported constants.
pub struct CitedInputs {
    name: String,
    description: String,
    scalars: BTreeMap<String, CitedScalar>,
    genus3_hyperelliptic_class: ClassCombination,
    kernel_relation: ClassCombination,
    surfaces: Vec<Surface>,
}

impl CitedInputs {
    fn from_json_str(s: &str) -> Result<Self> {
        let repr: InputsRepr = serde_json::from_str(s)
            .map_err(|e| Error::domain(format!("bad cited-inputs JSON: {e}")))?;
        let mut scalars = BTreeMap::new();
        for scalar in repr.scalars {
            if scalar.citation.trim().is_empty() {
                return Err(Error::domain(format!(
                    "scalar {:?} is missing its citation",
                    scalar.name
                )));
            }
            if scalars.insert(scalar.name.clone(), scalar).is_some() {
                return Err(Error::domain("duplicate scalar name in the cited inputs"));
            }
        }
        let inputs = CitedInputs {
            name: repr.name,
            description: repr.description,
            scalars,
            genus3_hyperelliptic_class: repr.genus3_hyperelliptic_class,
            kernel_relation: repr.kernel_relation,
            surfaces: repr.surfaces,
        };
        inputs.validate()?;
        Ok(inputs)
    }

    fn validate(&self) -> Result<()> {
        for combo in [&self.genus3_hyperelliptic_class, &self.kernel_relation] {
            if combo.classes.len() != combo.coeffs.len() {
                return Err(Error::domain("class combination lengths disagree"));
            }
            if combo.citation.trim().is_empty() {
                return Err(Error::domain("class combination is missing its citation"));
            }
        }
        let mut labels = BTreeMap::new();
        let allowed: Vec<&str> = ANSATZ_CLASSES
            .iter()
            .map(|(_, class)| *class)
            .chain(["kappa_2", "lambda^2"])
            .collect();
        for surface in &self.surfaces {
            if labels.insert(surface.label.clone(), ()).is_some() {
                return Err(Error::domain(format!(
                    "duplicate surface label {:?}",
                    surface.label
                )));
            }
            if surface.citation.trim().is_empty() {
                return Err(Error::domain(format!(
                    "surface {:?} is missing its citation",
                    surface.label
                )));
            }
            for class in surface.pairings.keys() {
                if !allowed.contains(&class.as_str()) {
                    return Err(Error::domain(format!(
                        "surface {:?} pairs with unknown class {class:?}",
                        surface.label
                    )));
                }
            }
        }
        Ok(())
    }

    /// The compiled-in input set.
    pub fn builtin() -> &'static CitedInputs {
        static INPUTS: OnceLock<CitedInputs> = OnceLock::new();
        INPUTS.get_or_init(|| {
            CitedInputs::from_json_str(include_str!("../../data/lambda_inputs.json"))
                .expect("embedded lambda inputs are valid")
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn scalar(&self, name: &str) -> Result<&CitedScalar> {
        self.scalars
            .get(name)
            .ok_or_else(|| Error::domain(format!("no cited scalar named {name:?}")))
    }

    /// The closed genus-3 hyperelliptic locus as a divisor combination.
    pub fn genus3_hyperelliptic_class(&self) -> &ClassCombination {
        &self.genus3_hyperelliptic_class
    }

    /// The genus-4 relation among kappa_2, lambda^2 and delta_1^2 that holds
    /// after multiplication by lambda^7.
    pub fn kernel_relation(&self) -> &ClassCombination {
        &self.kernel_relation
    }

    pub fn surfaces(&self) -> &[Surface] {
        &self.surfaces
    }

    pub fn surface(&self, label: &str) -> Result<&Surface> {
        self.surfaces
            .iter()
            .find(|s| s.label == label)
            .ok_or_else(|| Error::domain(format!("no test surface labeled {label:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_inputs_load_and_expose_the_expected_scalars() {
        let inputs = CitedInputs::builtin();
        let seed = inputs.scalar("hyperelliptic_seed_genus_one").expect("seed present");
        assert_eq!(seed.value(), &Rat::new(1, 96), "seed scalar should be 1/96");
        assert!(!seed.citation().is_empty(), "seed citation should be nonempty");
        assert!(inputs.scalar("no_such_scalar").is_err(), "unknown scalar should error");
    }

    #[test]
    fn builtin_inputs_carry_seven_surfaces_with_distinct_labels() {
        let inputs = CitedInputs::builtin();
        assert_eq!(inputs.surfaces().len(), 7, "expected the seven test surfaces");
        let alpha = inputs.surface("alpha").expect("alpha present");
        assert_eq!(
            alpha.pairing("delta_2^2"),
            Rat::from_int(8),
            "alpha should pair with delta_2^2 in 8"
        );
        assert_eq!(
            alpha.pairing("delta_0*delta_2"),
            Rat::zero(),
            "unlisted pairings should default to zero"
        );
        assert_eq!(alpha.target(), &Rat::from_int(72), "alpha target should be the doubled reading");
    }

    #[test]
    fn kernel_relation_exposes_coefficients_by_class_name() {
        let kernel = CitedInputs::builtin().kernel_relation();
        assert_eq!(kernel.coeff_of("kappa_2").expect("kappa_2 term"), &Rat::from_int(60));
        assert_eq!(kernel.coeff_of("lambda^2").expect("lambda^2 term"), &Rat::from_int(-810));
        assert!(kernel.coeff_of("delta_9").is_err(), "missing class should error");
    }
}
