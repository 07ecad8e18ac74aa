//! Bookkeeping for stepwise divisibility arguments.
//!
//! A divisibility chain walks a rational degree form through one prime at a
//! time: each step analyzes the form on a residue grid, records the admitted
//! condition, and usually adopts it by rescaling a variable. The types here
//! carry the narrative (what was claimed, at which precision, on what basis)
//! next to the machine verification that was performed.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{MultiPoly, Rat};
use crate::integrality::CosetCondition;
use crate::{Error, Result};

/// What a chain step asserts about the analyzed residue set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimKind {
    /// The analyzed set at precision `q^k` equals the stated condition and
    /// the precision is at least the denominator depth, so the condition is
    /// exact.
    ExactMatch { precision: u32 },
    /// The analyzed set at precision `q^k` equals the stated condition, but
    /// `k` is below the denominator depth; the condition is necessary and
    /// possibly incomplete.
    NecessityAt { precision: u32 },
    /// The analysis admits everything the standing conditions admit, so
    /// nothing new is learned.
    NoNewCondition { precision: u32 },
    /// A change of variables; the standing condition is re-expressed and
    /// checked against a fresh analysis in the new coordinates.
    Reframe,
    /// The closing check that the fully rescaled forms are integral, so the
    /// accumulated conditions are sufficient as well as necessary.
    Sufficiency,
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimKind::ExactMatch { precision } => write!(f, "exact at k={precision}"),
            ClaimKind::NecessityAt { precision } => write!(f, "necessary at k={precision}"),
            ClaimKind::NoNewCondition { precision } => {
                if *precision == 0 {
                    write!(f, "nothing new")
                } else {
                    write!(f, "nothing new at k={precision}")
                }
            }
            ClaimKind::Reframe => write!(f, "reframe"),
            ClaimKind::Sufficiency => write!(f, "sufficiency"),
        }
    }
}

/// Where a step's input comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basis {
    /// Everything in the step was computed here.
    Derived,
    /// The step quotes an intersection-theoretic fact that this crate does
    /// not rederive; the label names the quoted fact.
    Cited(String),
    /// Derived arithmetic on top of quoted inputs.
    Hybrid(String),
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Derived => write!(f, "derived"),
            Basis::Cited(label) => write!(f, "cited: {label}"),
            Basis::Hybrid(label) => write!(f, "derived from cited input: {label}"),
        }
    }
}

/// Whether the step's claim was machine-checked or only recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    Checked,
    Recorded,
}

/// One step of a divisibility chain.
#[derive(Debug, Clone)]
pub struct ChainStep {
    pub title: String,
    /// The prime under scrutiny, absent for reframes and closing steps.
    pub prime: Option<u64>,
    pub kind: ClaimKind,
    pub basis: Basis,
    /// The condition in human form, e.g. "2|a and 4|c".
    pub display: String,
    /// The substitution adopted after the step, e.g. "c = 2c'".
    pub adopted: Option<String>,
    /// Size of the admitted residue set over the size of the full grid.
    pub admitted: Option<(usize, u128)>,
    pub verification: Verification,
}

impl fmt::Display for ChainStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.title)?;
        if let Some(q) = self.prime {
            write!(f, " (mod {q})")?;
        }
        write!(f, " [{}, {}]: {}", self.kind, self.basis, self.display)?;
        if let Some((count, total)) = self.admitted {
            write!(f, " ({count} of {total} residue tuples)")?;
        }
        if let Some(adopted) = &self.adopted {
            write!(f, " => adopt {adopted}")?;
        }
        if self.verification == Verification::Recorded {
            write!(f, " [recorded, not checked]")?;
        }
        Ok(())
    }
}

/// Tracks the accumulated substitution `original_i = multiplier_i * current_i`
/// for each variable of a form.
#[derive(Debug, Clone)]
pub struct Frame {
    original: Vec<String>,
    current: Vec<String>,
    multiplier: Vec<BigInt>,
}

impl Frame {
    pub fn new(vars: &[&str]) -> Frame {
        Frame {
            original: vars.iter().map(|s| s.to_string()).collect(),
            current: vars.iter().map(|s| s.to_string()).collect(),
            multiplier: vec![BigInt::one(); vars.len()],
        }
    }

    fn index_of(&self, var: &str) -> Result<usize> {
        self.current
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::internal(format!("frame has no variable named {var}")))
    }

    /// Multiplies the named current variable's scale factor.
    pub fn scale(&mut self, var: &str, factor: u64) -> Result<()> {
        let i = self.index_of(var)?;
        self.multiplier[i] *= BigInt::from(factor);
        Ok(())
    }

    /// Renames a current variable, keeping its accumulated multiplier.
    pub fn rename(&mut self, var: &str, new_name: &str) -> Result<()> {
        let i = self.index_of(var)?;
        self.current[i] = new_name.to_string();
        Ok(())
    }

    pub fn names(&self) -> &[String] {
        &self.current
    }

    pub fn multipliers(&self) -> &[BigInt] {
        &self.multiplier
    }

    /// Rewrites a polynomial over the original variables into the current
    /// scaled coordinates.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.vars() != self.original.as_slice() {
            return Err(Error::internal(
                "frame substitution applied to a polynomial over different variables",
            ));
        }
        let n = self.original.len();
        let matrix: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rat::from(self.multiplier[i].clone())
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        f.substitute_linear(self.current.clone(), &matrix)
    }

    /// Human summary, e.g. "a = 420a2, b = 30b1, c = 60c2".
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .original
            .iter()
            .zip(&self.current)
            .zip(&self.multiplier)
            .map(|((orig, cur), m)| {
                if m.is_one() && orig == cur {
                    orig.clone()
                } else if m.is_one() {
                    format!("{orig} = {cur}")
                } else {
                    format!("{orig} = {m}{cur}")
                }
            })
            .collect();
        parts.join(", ")
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// Re-expresses a residue condition after the substitution
/// `old_i = factor * new_i` on one coordinate, where the factor is a unit
/// modulo the condition's modulus. Variable names are replaced wholesale.
pub fn rescale_condition(
    cond: &CosetCondition,
    var_idx: usize,
    factor: u64,
    new_vars: Vec<String>,
) -> Result<CosetCondition> {
    let m = cond.modulus();
    let inv = mod_inverse(factor % m, m).ok_or_else(|| {
        Error::internal(format!("{factor} is not a unit modulo {m}, cannot rescale"))
    })?;
    let mapped = cond
        .admitted()
        .iter()
        .map(|t| {
            let mut t = t.clone();
            t[var_idx] = (t[var_idx] * inv) % m;
            t
        })
        .collect();
    CosetCondition::from_admitted(new_vars, m, mapped)
}

/// Replaces a condition's variable names without touching the residue set.
pub fn rename_condition(cond: &CosetCondition, new_vars: Vec<String>) -> Result<CosetCondition> {
    CosetCondition::from_admitted(new_vars, cond.modulus(), cond.admitted().clone())
}
