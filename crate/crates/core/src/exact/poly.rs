use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rat;
use crate::{Error, Result};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are keyed by exponent vectors (one entry per variable, fixed order)
/// in a BTreeMap, so iteration order, serialization, and Display are all
/// deterministic. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

// ---- Constructors ----

impl MultiPoly {
    /// The zero polynomial in the given variables. Variable names must be
    /// nonempty and pairwise distinct.
    pub fn new(vars: Vec<String>) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::domain("a polynomial needs at least one variable"));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::domain("empty variable name"));
            }
            if vars[..i].contains(v) {
                return Err(Error::domain(format!("duplicate variable name {v:?}")));
            }
        }
        Ok(MultiPoly { vars, terms: BTreeMap::new() })
    }

    pub fn constant(vars: Vec<String>, c: Rat) -> Result<Self> {
        let mut p = MultiPoly::new(vars)?;
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        Ok(p)
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn variable(vars: Vec<String>, name: &str) -> Result<Self> {
        let mut p = MultiPoly::new(vars)?;
        let i = p.var_index(name)?;
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.terms.insert(e, Rat::one());
        Ok(p)
    }

    /// Builds from raw terms. Duplicate exponent vectors are merged by
    /// addition; zero results are dropped.
    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rat)>,
    ) -> Result<Self> {
        let mut p = MultiPoly::new(vars)?;
        let n = p.vars.len();
        for (exps, coeff) in terms {
            if exps.len() != n {
                return Err(Error::domain(format!(
                    "exponent vector of length {} in a polynomial with {} variables",
                    exps.len(),
                    n
                )));
            }
            p.add_term(exps, coeff);
        }
        Ok(p)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::domain(format!("bad polynomial JSON: {e}")))
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    // ---- Accessors ----

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::domain(format!("unknown variable {name:?}")))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the given exponent vector, zero if absent.
    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// The common total degree if every term has it, `None` otherwise. The
    /// zero polynomial counts as homogeneous of every degree; it reports 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = match degs.next() {
            None => return Some(0),
            Some(d) => d,
        };
        degs.all(|d| d == first).then_some(first)
    }

    /// Least common multiple of coefficient denominators (1 for zero).
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// The terms of `lcm * self`, which has integer coefficients, together
    /// with that lcm.
    pub fn cleared_integer_terms(&self) -> (BigInt, Vec<(Vec<u32>, BigInt)>) {
        let l = self.denominator_lcm();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.numer() * (&l / c.denom())))
            .collect();
        (l, terms)
    }

    // ---- Algebra ----

    pub fn scale(&self, k: &Rat) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.vars.clone(), Rat::one())
            .expect("vars already validated");
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point given in variable order.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.vars.len() {
            return Err(Error::domain(format!(
                "evaluation point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let mut total = Rat::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    term *= &x.pow(e as i64);
                }
            }
            total += &term;
        }
        Ok(total)
    }

    /// Substitutes `name -> k * name`, leaving other variables alone.
    pub fn scale_var(&self, name: &str, k: &Rat) -> Result<MultiPoly> {
        let i = self.var_index(name)?;
        let mut terms = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let c = coeff * &k.pow(exps[i] as i64);
            if !c.is_zero() {
                terms.insert(exps.clone(), c);
            }
        }
        Ok(MultiPoly { vars: self.vars.clone(), terms })
    }

    /// Linear change of variables: old variable `i` becomes the linear form
    /// `sum_j matrix[i][j] * new_vars[j]`. The matrix has one row per old
    /// variable and one column per new variable.
    pub fn substitute_linear(
        &self,
        new_vars: Vec<String>,
        matrix: &[Vec<Rat>],
    ) -> Result<MultiPoly> {
        if matrix.len() != self.vars.len() {
            return Err(Error::domain(format!(
                "substitution matrix has {} rows, polynomial has {} variables",
                matrix.len(),
                self.vars.len()
            )));
        }
        let target = MultiPoly::new(new_vars)?;
        let width = target.vars.len();
        let mut images = Vec::with_capacity(matrix.len());
        for row in matrix {
            if row.len() != width {
                return Err(Error::domain(format!(
                    "substitution matrix row has {} entries, expected {}",
                    row.len(),
                    width
                )));
            }
            let image = MultiPoly::from_terms(
                target.vars.clone(),
                row.iter().enumerate().map(|(j, c)| {
                    let mut e = vec![0; width];
                    e[j] = 1;
                    (e, c.clone())
                }),
            )?;
            images.push(image);
        }
        let mut out = MultiPoly { vars: target.vars.clone(), terms: BTreeMap::new() };
        for (exps, coeff) in &self.terms {
            let mut term = MultiPoly::constant(target.vars.clone(), coeff.clone())?;
            for (img, &e) in images.iter().zip(exps) {
                if e > 0 {
                    term = &term * &img.pow(e);
                }
            }
            for (e, c) in term.terms {
                out.add_term(e, c);
            }
        }
        Ok(out)
    }
}

// ---- Operators ----
// Mixed-variable arithmetic is a programming error; construction controls the
// variable sets, so these assert rather than return Result.

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "adding polynomials over different variables");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "subtracting polynomials over different variables");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "multiplying polynomials over different variables");
        let mut out = MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

// ---- Text form ----

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest exponent vectors first reads closest to handwritten order.
        for (i, (exps, coeff)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = exps
                .iter()
                .zip(&self.vars)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let mono = mono.join("*");
            let (sign, mag) = if coeff.is_negative() {
                ("-", coeff.abs())
            } else {
                ("+", coeff.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.vars.join(","))
    }
}

// ---- JSON form ----
// {"vars": ["a", "b"], "terms": [{"coeff": "1/2", "exps": [3, 0]}, ...]}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: Rat,
    exps: Vec<u32>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr { coeff: c.clone(), exps: e.clone() })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut seen = std::collections::BTreeSet::new();
        for t in &repr.terms {
            if !seen.insert(t.exps.clone()) {
                return Err(D::Error::custom(format!(
                    "duplicate exponent vector {:?}",
                    t.exps
                )));
            }
        }
        MultiPoly::from_terms(repr.vars, repr.terms.into_iter().map(|t| (t.exps, t.coeff)))
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}
