use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exact::{MultiPoly, Rat};
use crate::{Error, Result};

/// A ring generator together with its grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub grade: u32,
}

/// Which fundamental class a top pairing is taken against. The coarse space
/// and the orbifold differ by a fixed rational factor carried by the
/// presentation (1/2 in genus 2, where the generic curve has an involution).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingScale {
    Coarse,
    QClass,
}

/// One rewrite rule: the monomial `lhs` equals the polynomial `rhs`, with
/// every rhs monomial strictly smaller in the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Vec<u32>,
    pub rhs: Vec<(Vec<u32>, Rat)>,
}

/// A finite graded ring presented by generators, rewrite rules, a top degree
/// above which everything vanishes, and a calibration pinning the value of
/// the one surviving top-degree monomial.
///
/// Monomials are ordered by total weighted grade first, then lexicographically
/// with the last-listed generator most significant. Rules must rewrite
/// downward in this order, which makes normal forms terminate; listing the
/// boundary or higher-index generators last therefore eliminates their powers
/// first.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    name: String,
    generators: Vec<Generator>,
    rules: Vec<Rule>,
    top_degree: u32,
    calibration_monomial: Vec<u32>,
    calibration_value: Rat,
    q_factor: Rat,
    notes: Option<String>,
}

// ---- Monomial order ----

/// Grade-then-reverse-lex comparison shared by the rewriting engine and the
/// rule derivations.
pub(crate) fn cmp_graded(a: &[u32], b: &[u32], grades: &[u32]) -> Ordering {
    let ga: u64 = a.iter().zip(grades).map(|(&e, &g)| e as u64 * g as u64).sum();
    let gb: u64 = b.iter().zip(grades).map(|(&e, &g)| e as u64 * g as u64).sum();
    ga.cmp(&gb).then_with(|| {
        for i in (0..a.len()).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    })
}

fn divides(lhs: &[u32], mono: &[u32]) -> bool {
    lhs.iter().zip(mono).all(|(&l, &m)| l <= m)
}

/// Core rewriting loop on a raw term map. Repeatedly takes the largest
/// monomial reducible by any rule and rewrites it; monomials graded above
/// `top_degree` (when given) are dropped. Exposed at crate level so rule
/// derivations can reduce against partial rule sets.
pub(crate) fn normal_form_raw(
    grades: &[u32],
    rules: &[Rule],
    top_degree: Option<u32>,
    terms: BTreeMap<Vec<u32>, Rat>,
) -> Result<BTreeMap<Vec<u32>, Rat>> {
    let grade_of = |e: &[u32]| -> u64 {
        e.iter().zip(grades).map(|(&x, &g)| x as u64 * g as u64).sum()
    };
    let mut work: BTreeMap<Vec<u32>, Rat> = terms
        .into_iter()
        .filter(|(e, c)| {
            !c.is_zero() && top_degree.map_or(true, |t| grade_of(e) <= t as u64)
        })
        .collect();
    // Every step replaces the largest reducible monomial by strictly smaller
    // ones, so this terminates; the cap is pure paranoia.
    for _ in 0..1_000_000 {
        let target = work
            .keys()
            .filter(|e| rules.iter().any(|r| divides(&r.lhs, e)))
            .max_by(|a, b| cmp_graded(a, b, grades))
            .cloned();
        let Some(mono) = target else {
            return Ok(work);
        };
        let coeff = work.remove(&mono).expect("monomial came from the map");
        let rule = rules
            .iter()
            .find(|r| divides(&r.lhs, &mono))
            .expect("a rule matched during selection");
        let rest: Vec<u32> = mono.iter().zip(&rule.lhs).map(|(&m, &l)| m - l).collect();
        for (re, rc) in &rule.rhs {
            let e: Vec<u32> = re.iter().zip(&rest).map(|(&x, &y)| x + y).collect();
            let add = &coeff * rc;
            let entry = work.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += &add;
            if entry.is_zero() {
                work.remove(&e);
            }
        }
    }
    Err(Error::internal("rewriting did not terminate within the step budget"))
}

/// All exponent tuples over `n` variables with weighted grade exactly `d`.
pub(crate) fn graded_monomials(grades: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn rec(grades: &[u32], left: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if grades.is_empty() {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let g = grades[0];
        let max = left / g;
        for e in 0..=max {
            acc.push(e);
            rec(&grades[1..], left - e * g, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(grades, d, &mut Vec::new(), &mut out);
    out
}

// ---- Construction and access ----

impl RingPresentation {
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        name: impl Into<String>,
        generators: Vec<Generator>,
        rules: Vec<Rule>,
        top_degree: u32,
        calibration_monomial: Vec<u32>,
        calibration_value: Rat,
        q_factor: Rat,
        notes: Option<String>,
    ) -> Result<Self> {
        let p = RingPresentation {
            name: name.into(),
            generators,
            rules,
            top_degree,
            calibration_monomial,
            calibration_value,
            q_factor,
            notes,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let repr: PresentationRepr = serde_json::from_str(s)
            .map_err(|e| Error::domain(format!("bad ring presentation JSON: {e}")))?;
        repr.build()
    }

    /// Genus-2 intersection ring in the basis (lambda, delta1).
    pub fn builtin_m2bar() -> &'static RingPresentation {
        static P: OnceLock<RingPresentation> = OnceLock::new();
        P.get_or_init(|| {
            RingPresentation::from_json_str(include_str!("../../data/m2bar.json"))
                .expect("embedded m2bar presentation is valid")
        })
    }

    /// Genus-4 lambda-class ring truncated at degree 9.
    pub fn builtin_mumford_m4() -> &'static RingPresentation {
        static P: OnceLock<RingPresentation> = OnceLock::new();
        P.get_or_init(|| {
            RingPresentation::from_json_str(include_str!("../../data/mumford_m4.json"))
                .expect("embedded mumford_m4 presentation is valid")
        })
    }

    fn validate(&self) -> Result<()> {
        let n = self.generators.len();
        if n == 0 {
            return Err(Error::domain("presentation needs at least one generator"));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.name.is_empty() {
                return Err(Error::domain("empty generator name"));
            }
            if g.grade == 0 {
                return Err(Error::domain(format!("generator {} has grade 0", g.name)));
            }
            if self.generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::domain(format!("duplicate generator name {}", g.name)));
            }
        }
        if self.top_degree == 0 {
            return Err(Error::domain("top degree must be positive"));
        }
        let grades = self.grades();
        let grade_of = |e: &[u32]| -> u64 {
            e.iter().zip(&grades).map(|(&x, &g)| x as u64 * g as u64).sum()
        };
        for (ri, rule) in self.rules.iter().enumerate() {
            if rule.lhs.len() != n {
                return Err(Error::domain(format!("rule {ri}: lhs length mismatch")));
            }
            if rule.lhs.iter().all(|&e| e == 0) {
                return Err(Error::domain(format!("rule {ri}: lhs is the unit monomial")));
            }
            if self.rules[..ri].iter().any(|r| r.lhs == rule.lhs) {
                return Err(Error::domain(format!("rule {ri}: duplicate lhs")));
            }
            let lg = grade_of(&rule.lhs);
            for (e, c) in &rule.rhs {
                if e.len() != n {
                    return Err(Error::domain(format!("rule {ri}: rhs exponent length mismatch")));
                }
                if c.is_zero() {
                    return Err(Error::domain(format!("rule {ri}: zero coefficient in rhs")));
                }
                if grade_of(e) != lg {
                    return Err(Error::domain(format!(
                        "rule {ri}: rhs term breaks homogeneity (grade {} vs {})",
                        grade_of(e),
                        lg
                    )));
                }
                if cmp_graded(e, &rule.lhs, &grades) != Ordering::Less {
                    return Err(Error::domain(format!(
                        "rule {ri}: rhs monomial not smaller than lhs, rewriting would not terminate"
                    )));
                }
            }
        }
        if self.calibration_monomial.len() != n {
            return Err(Error::domain("calibration monomial length mismatch"));
        }
        if grade_of(&self.calibration_monomial) != self.top_degree as u64 {
            return Err(Error::domain("calibration monomial does not have the top degree"));
        }
        if self.calibration_value.is_zero() {
            return Err(Error::domain("calibration value must be nonzero"));
        }
        if self.q_factor.is_zero() {
            return Err(Error::domain("q_factor must be nonzero"));
        }
        // Every top-degree monomial must reduce to a multiple of the
        // calibration monomial, otherwise top pairings are ill-defined.
        for mono in graded_monomials(&grades, self.top_degree) {
            let mut terms = BTreeMap::new();
            terms.insert(mono.clone(), Rat::one());
            let nf = normal_form_raw(&grades, &self.rules, Some(self.top_degree), terms)?;
            if nf.keys().any(|e| e != &self.calibration_monomial) {
                return Err(Error::domain(format!(
                    "top-degree monomial {mono:?} does not reduce to the calibration monomial"
                )));
            }
        }
        Ok(())
    }

    // ---- Accessors ----

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_vars(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn grades(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.grade).collect()
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn calibration(&self) -> (&[u32], &Rat) {
        (&self.calibration_monomial, &self.calibration_value)
    }

    pub fn q_factor(&self) -> &Rat {
        &self.q_factor
    }

    pub fn notes(&self) -> Option<&str> {
        self.notes.as_deref()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// True when the two presentations agree as mathematics: same generators,
    /// rules, truncation, and calibration. Names and notes may differ.
    pub fn math_eq(&self, other: &RingPresentation) -> bool {
        self.generators == other.generators
            && self.rules == other.rules
            && self.top_degree == other.top_degree
            && self.calibration_monomial == other.calibration_monomial
            && self.calibration_value == other.calibration_value
            && self.q_factor == other.q_factor
    }

    /// The generator `name` as a polynomial over the generator variables.
    pub fn gen_poly(&self, name: &str) -> Result<MultiPoly> {
        MultiPoly::variable(self.generator_vars(), name)
    }

    /// Weighted grade of an exponent vector.
    pub fn weighted_grade(&self, exps: &[u32]) -> Result<u64> {
        if exps.len() != self.generators.len() {
            return Err(Error::domain("exponent vector length mismatch"));
        }
        Ok(exps
            .iter()
            .zip(self.grades())
            .map(|(&e, g)| e as u64 * g as u64)
            .sum())
    }

    // ---- The two ring operations ----

    /// Normal form of a polynomial in the generators: rewrite rules applied
    /// to exhaustion, largest reducible monomial first, with everything
    /// graded above the top degree truncated to zero.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        let vars = self.generator_vars();
        if p.vars() != vars.as_slice() {
            return Err(Error::domain(format!(
                "polynomial variables {:?} do not match ring generators {:?}",
                p.vars(),
                vars
            )));
        }
        let terms: BTreeMap<Vec<u32>, Rat> =
            p.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect();
        let nf = normal_form_raw(&self.grades(), &self.rules, Some(self.top_degree), terms)?;
        MultiPoly::from_terms(vars, nf)
    }

    /// Evaluates a class of pure top degree against the fundamental class.
    /// The input must be homogeneous of the top degree; its normal form is
    /// then a multiple of the calibration monomial and the pairing is that
    /// multiple times the calibration value (times the orbifold factor for
    /// `QClass`).
    pub fn top_pairing(&self, p: &MultiPoly, scale: PairingScale) -> Result<Rat> {
        let vars = self.generator_vars();
        if p.vars() != vars.as_slice() {
            return Err(Error::domain("polynomial variables do not match ring generators"));
        }
        for (e, _) in p.terms() {
            if self.weighted_grade(e)? != self.top_degree as u64 {
                return Err(Error::domain(format!(
                    "top pairing needs pure degree {}, found a term of degree {}",
                    self.top_degree,
                    self.weighted_grade(e)?
                )));
            }
        }
        let nf = self.normal_form(p)?;
        let mut value = Rat::zero();
        for (e, c) in nf.terms() {
            if e == self.calibration_monomial.as_slice() {
                value = c.clone();
            } else {
                // validate() proved this impossible for monomial inputs, and
                // linearity extends that to all inputs.
                return Err(Error::internal(
                    "normal form at top degree left a non-calibration monomial",
                ));
            }
        }
        let coarse = &value * &self.calibration_value;
        Ok(match scale {
            PairingScale::Coarse => coarse,
            PairingScale::QClass => &coarse * &self.q_factor,
        })
    }
}

// ---- JSON representation ----

#[derive(Serialize, Deserialize)]
struct RuleTermRepr {
    coeff: Rat,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RuleRepr {
    lhs: Vec<u32>,
    rhs: Vec<RuleTermRepr>,
}

#[derive(Serialize, Deserialize)]
struct CalibrationRepr {
    monomial: Vec<u32>,
    value: Rat,
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    name: String,
    generators: Vec<Generator>,
    rules: Vec<RuleRepr>,
    top_degree: u32,
    calibration: CalibrationRepr,
    #[serde(default)]
    q_factor: Option<Rat>,
    #[serde(default)]
    notes: Option<String>,
}

impl PresentationRepr {
    fn build(self) -> Result<RingPresentation> {
        RingPresentation::from_parts(
            self.name,
            self.generators,
            self.rules
                .into_iter()
                .map(|r| Rule {
                    lhs: r.lhs,
                    rhs: r.rhs.into_iter().map(|t| (t.exps, t.coeff)).collect(),
                })
                .collect(),
            self.top_degree,
            self.calibration.monomial,
            self.calibration.value,
            self.q_factor.unwrap_or_else(Rat::one),
            self.notes,
        )
    }
}
