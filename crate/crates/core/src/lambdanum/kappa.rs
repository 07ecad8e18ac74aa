//! Kappa monomial degrees in genus 3.
//!
//! The eleven monomials of total weight six in the kappa classes have known
//! degrees, stored here as a table keyed by exponent vectors. Two of the
//! entries admit independent computations inside this crate: the pure
//! kappa_1 power is a divisor degree, and the single kappa_6 is the
//! constant predicted by two-dimensional gravity. Both checks are exposed.

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::ampleness::m3;
use crate::exact::Rat;
use crate::{Error, Result};

/// Total weight of the stored monomials: the dimension of the genus-3
/// space.
const WEIGHT: u32 = 6;

/// One kappa monomial: exponents of kappa_1 through kappa_6 and its degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaEntry {
    label: String,
    exponents: Vec<u32>,
    value: Rat,
}

impl KappaEntry {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }
}

/// The table of kappa monomial degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaTable {
    name: String,
    description: String,
    citation: String,
    entries: Vec<KappaEntry>,
}

/// Exponent vectors of all weight-six kappa monomials, lexicographically
/// largest part first. There are exactly as many as partitions of six.
fn weight_partitions() -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            let mut exps = vec![0u32; WEIGHT as usize];
            for &part in acc.iter() {
                exps[part as usize - 1] += 1;
            }
            out.push(exps);
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            acc.push(part);
            rec(remaining - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(WEIGHT, WEIGHT, &mut Vec::new(), &mut out);
    out
}

impl KappaTable {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let table: KappaTable = serde_json::from_str(s)
            .map_err(|e| Error::domain(format!("bad kappa table JSON: {e}")))?;
        table.validate()?;
        Ok(table)
    }

    /// Serializes the table back to JSON. Field and entry order are fixed,
    /// so equal tables serialize to equal strings.
    pub fn to_json_str(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::internal(format!("kappa table failed to serialize: {e}")))
    }

    /// The compiled-in genus-3 table.
    pub fn builtin_m3() -> &'static KappaTable {
        static TABLE: OnceLock<KappaTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            KappaTable::from_json_str(include_str!("../../data/kappa_m3.json"))
                .expect("embedded kappa table is valid")
        })
    }

    fn validate(&self) -> Result<()> {
        if self.citation.trim().is_empty() {
            return Err(Error::domain("kappa table is missing its citation"));
        }
        let mut expected = weight_partitions();
        let mut seen: Vec<Vec<u32>> = Vec::new();
        for entry in &self.entries {
            if entry.label.trim().is_empty() {
                return Err(Error::domain("kappa table entry with empty label"));
            }
            if entry.exponents.len() != WEIGHT as usize {
                return Err(Error::domain(format!(
                    "entry {:?} should list {WEIGHT} exponents",
                    entry.label
                )));
            }
            let weight: u32 = entry
                .exponents
                .iter()
                .enumerate()
                .map(|(i, &e)| (i as u32 + 1) * e)
                .sum();
            if weight != WEIGHT {
                return Err(Error::domain(format!(
                    "entry {:?} has weight {weight}, expected {WEIGHT}",
                    entry.label
                )));
            }
            if !entry.value.is_positive() {
                return Err(Error::domain(format!(
                    "entry {:?} should have a positive degree",
                    entry.label
                )));
            }
            if seen.contains(&entry.exponents) {
                return Err(Error::domain(format!(
                    "entry {:?} repeats an exponent vector",
                    entry.label
                )));
            }
            seen.push(entry.exponents.clone());
        }
        expected.sort();
        seen.sort();
        if seen != expected {
            return Err(Error::domain(format!(
                "the table should cover all {} weight-{WEIGHT} monomials exactly once",
                expected.len()
            )));
        }
        // The lone kappa_6 entry is pinned by the gravity prediction; a
        // table violating that is corrupted data, not an open question.
        let stored = self.value(&[0, 0, 0, 0, 0, 1])?;
        if stored != &witten_formula(3)? {
            return Err(Error::domain(
                "the kappa_6 entry disagrees with the gravity constant",
            ));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn citation(&self) -> &str {
        &self.citation
    }

    pub fn entries(&self) -> &[KappaEntry] {
        &self.entries
    }

    /// The degree of the monomial with the given exponent vector.
    pub fn value(&self, exponents: &[u32]) -> Result<&Rat> {
        self.entries
            .iter()
            .find(|e| e.exponents == exponents)
            .map(|e| &e.value)
            .ok_or_else(|| Error::domain(format!("no kappa monomial with exponents {exponents:?}")))
    }

    pub fn entry(&self, label: &str) -> Result<&KappaEntry> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .ok_or_else(|| Error::domain(format!("no kappa monomial labeled {label:?}")))
    }
}

/// The constant predicted by two-dimensional gravity for the top kappa
/// class: 1 / (24^g g!).
pub fn witten_formula(g: u32) -> Result<Rat> {
    if g == 0 {
        return Err(Error::domain("the gravity constant is indexed by genus at least 1"));
    }
    let mut denom = BigInt::from(1);
    for i in 1..=g {
        denom = denom * 24 * i;
    }
    Ok(Rat::new(1, denom))
}

/// Comparison of a stored degree against an independent computation.
#[derive(Clone, Debug)]
pub struct WittenCheck {
    pub stored: Rat,
    pub formula: Rat,
    pub agree: bool,
}

/// Checks the stored top kappa degree against the gravity constant. Only
/// genus 3 has a stored table to check.
pub fn witten_check(g: u32) -> Result<WittenCheck> {
    if g != 3 {
        return Err(Error::domain("the stored kappa table covers genus 3 only"));
    }
    let stored = KappaTable::builtin_m3().value(&[0, 0, 0, 0, 0, 1])?.clone();
    let formula = witten_formula(g)?;
    let agree = stored == formula;
    Ok(WittenCheck { stored, formula, agree })
}

/// Comparison of the stored top kappa_1 power against the divisor pipeline.
#[derive(Clone, Debug)]
pub struct Kappa1Check {
    pub stored: Rat,
    pub derived: Rat,
    pub agree: bool,
}

/// Recomputes kappa_1^6 as a divisor degree. The first kappa class is
/// 12 lambda - delta_0 - delta_1, so its top power is an evaluation of the
/// same sextic form the ampleness pipeline uses.
pub fn kappa1_top_check() -> Result<Kappa1Check> {
    let stored = KappaTable::builtin_m3().value(&[6, 0, 0, 0, 0, 0])?.clone();
    let derived = m3::degree_of(12, 1, 1)?;
    let agree = stored == derived;
    Ok(Kappa1Check { stored, derived, agree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_builtin_table_holds_all_eleven_weight_six_monomials() {
        let table = KappaTable::builtin_m3();
        assert_eq!(table.entries().len(), 11, "eleven partitions of six");
        assert_eq!(
            table.value(&[1, 0, 0, 0, 1, 0]).expect("kappa_1 kappa_5 present"),
            &Rat::new(1, 5760)
        );
        assert!(table.value(&[7, 0, 0, 0, 0, 0]).is_err(), "weight-7 lookup should fail");
    }

    #[test]
    fn the_table_round_trips_through_json_identically() {
        let table = KappaTable::builtin_m3();
        let first = table.to_json_str().expect("serializes");
        let reparsed = KappaTable::from_json_str(&first).expect("reparses");
        assert_eq!(&reparsed, table, "round trip should preserve the table");
        let second = reparsed.to_json_str().expect("serializes again");
        assert_eq!(first, second, "serialized forms should match byte for byte");
    }

    #[test]
    fn the_gravity_constant_matches_the_closed_form() {
        assert_eq!(witten_formula(2).expect("genus 2"), Rat::new(1, 1152));
        assert_eq!(witten_formula(3).expect("genus 3"), Rat::new(1, 82944));
        assert_eq!(witten_formula(4).expect("genus 4"), Rat::new(1, 7962624));
        assert!(witten_formula(0).is_err(), "genus 0 should be rejected");
    }

    #[test]
    fn the_witten_check_passes_in_genus_three_and_only_there() {
        let check = witten_check(3).expect("check runs");
        assert!(check.agree, "stored kappa_6 should equal the gravity constant");
        assert_eq!(check.stored, Rat::new(1, 82944));
        assert!(witten_check(4).is_err(), "no stored table outside genus 3");
    }

    #[test]
    fn the_top_kappa1_power_matches_the_divisor_pipeline() {
        let check = kappa1_top_check().expect("check runs");
        assert!(check.agree, "table and divisor pipeline should agree on kappa_1^6");
        assert_eq!(check.derived, Rat::new(176557, 107520));
    }

    #[test]
    fn corrupted_tables_are_rejected() {
        let table = KappaTable::builtin_m3();
        let mut wrong_weight = table.clone();
        wrong_weight.entries[0].exponents = vec![5, 0, 0, 0, 0, 0];
        assert!(wrong_weight.validate().is_err(), "weight-5 entry should be rejected");
        let mut duplicate = table.clone();
        duplicate.entries[1].exponents = vec![6, 0, 0, 0, 0, 0];
        assert!(duplicate.validate().is_err(), "duplicated exponents should be rejected");
        let mut bad_constant = table.clone();
        bad_constant.entries[10].value = Rat::new(1, 82945);
        assert!(bad_constant.validate().is_err(), "wrong kappa_6 should be rejected");
    }
}
