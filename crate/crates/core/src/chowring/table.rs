use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::presentation::{PairingScale, RingPresentation};
use crate::exact::{multinomial, MultiPoly, Rat};
use crate::{Error, Result};

/// Complete table of top-degree monomial values on a space with a chosen
/// divisor basis: one rational number for every exponent tuple of total
/// degree `degree`, zeros included.
///
/// The table is the polarized form of the `degree`-th power of a generic
/// divisor `sum_i signs[i] * x_i * class_i`: knowing all monomial values and
/// knowing the power form are equivalent, and [`MonomialTable::power_form`] /
/// [`MonomialTable::polarize`] convert in the two directions.
#[derive(Clone, Debug)]
pub struct MonomialTable {
    name: String,
    classes: Vec<String>,
    coeff_vars: Vec<String>,
    signs: Vec<i32>,
    degree: u32,
    values: BTreeMap<Vec<u32>, Rat>,
    notes: Option<String>,
}

/// Equality is mathematical content only; `name` and `notes` are annotations.
impl PartialEq for MonomialTable {
    fn eq(&self, other: &Self) -> bool {
        self.classes == other.classes
            && self.coeff_vars == other.coeff_vars
            && self.signs == other.signs
            && self.degree == other.degree
            && self.values == other.values
    }
}

impl Eq for MonomialTable {}

impl MonomialTable {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let repr: TableRepr = serde_json::from_str(s)
            .map_err(|e| Error::domain(format!("bad monomial table JSON: {e}")))?;
        repr.build()
    }

    /// Degree-6 monomial values on the compactified genus-3 moduli space,
    /// basis (lambda, delta0, delta1), coarse fundamental class.
    pub fn builtin_m3bar_topform() -> &'static MonomialTable {
        static T: OnceLock<MonomialTable> = OnceLock::new();
        T.get_or_init(|| {
            MonomialTable::from_json_str(include_str!("../../data/m3bar_topform.json"))
                .expect("embedded genus-3 top form table is valid")
        })
    }

    fn from_value_list(
        name: String,
        classes: Vec<String>,
        coeff_vars: Vec<String>,
        signs: Vec<i32>,
        degree: u32,
        values: Vec<(Vec<u32>, Rat)>,
        notes: Option<String>,
    ) -> Result<Self> {
        let n = classes.len();
        if n == 0 {
            return Err(Error::domain("monomial table needs at least one class"));
        }
        if coeff_vars.len() != n || signs.len() != n {
            return Err(Error::domain(
                "classes, coeff_vars, and signs must all have the same length",
            ));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::domain("signs must be +1 or -1"));
        }
        if degree == 0 {
            return Err(Error::domain("table degree must be positive"));
        }
        let mut map = BTreeMap::new();
        for (exps, value) in values {
            if exps.len() != n {
                return Err(Error::domain(format!("exponent tuple {exps:?} has wrong length")));
            }
            if exps.iter().sum::<u32>() != degree {
                return Err(Error::domain(format!(
                    "exponent tuple {exps:?} does not have total degree {degree}"
                )));
            }
            if map.insert(exps.clone(), value).is_some() {
                return Err(Error::domain(format!("duplicate exponent tuple {exps:?}")));
            }
        }
        let expected = super::presentation::graded_monomials(&vec![1; n], degree);
        if map.len() != expected.len() {
            return Err(Error::domain(format!(
                "table lists {} monomials, a complete degree-{degree} table over {n} classes has {}",
                map.len(),
                expected.len()
            )));
        }
        Ok(MonomialTable { name, classes, coeff_vars, signs, degree, values: map, notes })
    }

    /// Builds the complete table for a ring presentation by pairing every
    /// top-degree monomial in the generators.
    pub fn from_presentation(
        pres: &RingPresentation,
        coeff_vars: Vec<String>,
        signs: Vec<i32>,
        scale: PairingScale,
        name: impl Into<String>,
    ) -> Result<Self> {
        let grades = pres.grades();
        if grades.iter().any(|&g| g != 1) {
            return Err(Error::domain(
                "monomial tables need all generators in grade 1, the divisor case",
            ));
        }
        let vars = pres.generator_vars();
        let mut values = Vec::new();
        for exps in super::presentation::graded_monomials(&grades, pres.top_degree()) {
            let mono = MultiPoly::from_terms(vars.clone(), [(exps.clone(), Rat::one())])?;
            values.push((exps, pres.top_pairing(&mono, scale)?));
        }
        MonomialTable::from_value_list(
            name.into(),
            vars,
            coeff_vars,
            signs,
            pres.top_degree(),
            values,
            None,
        )
    }

    /// Recovers the table from the expanded power form: the coefficient of
    /// `x^e` in the form is multinomial(e) * signs^e * value(e).
    pub fn polarize(
        form: &MultiPoly,
        classes: Vec<String>,
        signs: Vec<i32>,
        name: impl Into<String>,
    ) -> Result<Self> {
        let degree = form
            .homogeneous_degree()
            .ok_or_else(|| Error::domain("polarization needs a homogeneous form"))?;
        if form.is_zero() {
            return Err(Error::domain("polarization of the zero form is meaningless"));
        }
        let n = form.vars().len();
        if classes.len() != n {
            return Err(Error::domain("one class name per form variable is required"));
        }
        let values = super::presentation::graded_monomials(&vec![1; n], degree)
            .into_iter()
            .map(|exps| {
                let sign = exps
                    .iter()
                    .zip(&signs)
                    .fold(1i32, |acc, (&e, &s)| if e % 2 == 1 { acc * s } else { acc });
                let v = &form.coeff(&exps) * &Rat::new(sign, multinomial(&exps));
                (exps, v)
            })
            .collect();
        MonomialTable::from_value_list(
            name.into(),
            classes,
            form.vars().to_vec(),
            signs,
            degree,
            values,
            None,
        )
    }

    // ---- Accessors ----

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn coeff_vars(&self) -> &[String] {
        &self.coeff_vars
    }

    pub fn signs(&self) -> &[i32] {
        &self.signs
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn notes(&self) -> Option<&str> {
        self.notes.as_deref()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.values.iter().map(|(e, v)| (e.as_slice(), v))
    }

    /// Value of the monomial with the given exponents (total degree must
    /// equal the table degree).
    pub fn value(&self, exps: &[u32]) -> Result<&Rat> {
        self.values.get(exps).ok_or_else(|| {
            Error::domain(format!(
                "exponent tuple {exps:?} is not a degree-{} monomial over {} classes",
                self.degree,
                self.classes.len()
            ))
        })
    }

    // ---- The two expansion directions ----

    /// The `degree`-th power of the generic divisor as a polynomial in the
    /// coefficient variables. Inverse of [`MonomialTable::polarize`].
    pub fn power_form(&self) -> Result<MultiPoly> {
        let terms = self.values.iter().map(|(exps, v)| {
            let sign = exps
                .iter()
                .zip(&self.signs)
                .fold(1i32, |acc, (&e, &s)| if e % 2 == 1 { acc * s } else { acc });
            let c = &Rat::new(sign, 1) * &(&Rat::from_int(multinomial(exps)) * v);
            (exps.clone(), c)
        });
        MultiPoly::from_terms(self.coeff_vars.clone(), terms)
    }

    /// The value of D^(degree-1) * C as a polynomial in the divisor
    /// coefficients, where C is the fixed class `sum_i class_coeffs[i] *
    /// class_i` (given directly in the class basis, no sign convention).
    pub fn mixed_power_form(&self, class_coeffs: &[Rat]) -> Result<MultiPoly> {
        let n = self.classes.len();
        if class_coeffs.len() != n {
            return Err(Error::domain(format!(
                "the fixed class needs {n} coefficients, got {}",
                class_coeffs.len()
            )));
        }
        if self.degree < 1 {
            return Err(Error::domain("mixed form needs degree at least 1"));
        }
        let k = self.degree - 1;
        let terms = super::presentation::graded_monomials(&vec![1; n], k)
            .into_iter()
            .filter_map(|exps| {
                let sign = exps
                    .iter()
                    .zip(&self.signs)
                    .fold(1i32, |acc, (&e, &s)| if e % 2 == 1 { acc * s } else { acc });
                let mut capped = Rat::zero();
                for (i, cc) in class_coeffs.iter().enumerate() {
                    if cc.is_zero() {
                        continue;
                    }
                    let mut up = exps.clone();
                    up[i] += 1;
                    capped += &(cc * self.values.get(&up).expect("table is complete"));
                }
                if capped.is_zero() {
                    return None;
                }
                let c = &Rat::new(sign, 1) * &(&Rat::from_int(multinomial(&exps)) * &capped);
                Some((exps, c))
            });
        MultiPoly::from_terms(self.coeff_vars.clone(), terms)
    }
}

// ---- JSON representation ----

#[derive(Serialize, Deserialize)]
struct ValueRepr {
    exps: Vec<u32>,
    value: Rat,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    name: String,
    classes: Vec<String>,
    coeff_vars: Vec<String>,
    signs: Vec<i32>,
    degree: u32,
    values: Vec<ValueRepr>,
    #[serde(default)]
    notes: Option<String>,
}

impl TableRepr {
    fn build(self) -> Result<MonomialTable> {
        MonomialTable::from_value_list(
            self.name,
            self.classes,
            self.coeff_vars,
            self.signs,
            self.degree,
            self.values.into_iter().map(|v| (v.exps, v.value)).collect(),
            self.notes,
        )
    }
}

impl Serialize for MonomialTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TableRepr {
            name: self.name.clone(),
            classes: self.classes.clone(),
            coeff_vars: self.coeff_vars.clone(),
            signs: self.signs.clone(),
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(e, v)| ValueRepr { exps: e.clone(), value: v.clone() })
                .collect(),
            notes: self.notes.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MonomialTable {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let repr = TableRepr::deserialize(deserializer)?;
        repr.build().map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t3() -> &'static MonomialTable {
        MonomialTable::builtin_m3bar_topform()
    }

    #[test]
    fn the_genus3_table_is_complete_and_spot_checks_hold() {
        assert_eq!(t3().entries().count(), 28, "28 sixth-degree monomials over 3 classes");
        assert_eq!(t3().value(&[6, 0, 0]).unwrap(), &Rat::new(1, 90720));
        assert_eq!(t3().value(&[0, 6, 0]).unwrap(), &Rat::new(-4103, 72));
        assert_eq!(t3().value(&[2, 2, 2]).unwrap(), &Rat::new(1, 144));
        assert_eq!(t3().value(&[5, 1, 0]).unwrap(), &Rat::zero());
        assert!(t3().value(&[5, 0, 0]).is_err(), "degree-5 tuple must be rejected");
    }

    #[test]
    fn power_form_has_the_nineteen_expected_terms() {
        let form = t3().power_form().unwrap();
        assert_eq!(form.num_terms(), 19, "nine of the 28 monomial values are zero");
        assert_eq!(form.coeff(&[6, 0, 0]), Rat::new(1, 90720));
        assert_eq!(form.coeff(&[1, 5, 0]), Rat::new(203, 20), "sign flip from five delta factors");
        assert_eq!(form.coeff(&[2, 1, 3]), Rat::new(-43, 96));
        assert_eq!(form.coeff(&[0, 0, 6]), Rat::new(5, 1024));
    }

    #[test]
    fn polarize_inverts_power_form() {
        let form = t3().power_form().unwrap();
        let back = MonomialTable::polarize(
            &form,
            t3().classes().to_vec(),
            t3().signs().to_vec(),
            t3().name(),
        )
        .unwrap();
        assert_eq!(&back, t3(), "polarization must recover every monomial value");
    }

    #[test]
    fn mixed_form_against_the_first_basis_class_drops_one_power() {
        // Capping with lambda itself: coefficient of a^5 is 6 * value(6,0,0)
        // ... divided by the multinomial bookkeeping; check one entry exactly.
        let lambda = [Rat::one(), Rat::zero(), Rat::zero()];
        let mixed = t3().mixed_power_form(&lambda).unwrap();
        assert_eq!(mixed.homogeneous_degree(), Some(5));
        assert_eq!(
            mixed.coeff(&[5, 0, 0]),
            Rat::new(1, 90720),
            "a^5 coefficient is value(lambda^6)"
        );
        // b^5 coefficient: sign (-1)^5 times value(0,5,1) capped with lambda
        // = -value(1,5,0).
        assert_eq!(mixed.coeff(&[0, 5, 0]), Rat::new(203, 120));
    }

    #[test]
    fn json_round_trip_preserves_the_table() {
        let json = serde_json::to_string(t3()).unwrap();
        let back: MonomialTable = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, t3());
    }

    #[test]
    fn incomplete_tables_are_rejected() {
        let bad = r#"{
            "name": "partial", "classes": ["x", "y"], "coeff_vars": ["a", "b"],
            "signs": [1, 1], "degree": 2,
            "values": [{"exps": [2, 0], "value": "1"}]
        }"#;
        assert!(MonomialTable::from_json_str(bad).is_err(), "missing tuples must fail");
    }
}
