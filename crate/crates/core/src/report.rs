//! Provenance-tagged result entries.
//!
//! Every value a caller sees is either recomputed here from first
//! principles, quoted from the source material, or derived arithmetic on
//! top of quoted inputs. A [`ReportEntry`] pins that status to the value
//! together with a citation string naming the reproduced claim, so output
//! can always answer "where does this number come from".

use std::fmt;

use serde::Serialize;

use crate::exact::Rat;

/// The marker used when a value is artifact plumbing rather than a
/// reproduced claim, e.g. a residue count from a generic analysis run.
pub const PLUMBING: &str = "plumbing";

/// How a reported value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Derivation {
    /// Recomputed here from first principles.
    Derived,
    /// Quoted from the source material without rederivation.
    Cited,
    /// Derived arithmetic on top of quoted inputs.
    Hybrid,
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derivation::Derived => write!(f, "derived"),
            Derivation::Cited => write!(f, "cited"),
            Derivation::Hybrid => write!(f, "hybrid"),
        }
    }
}

/// One reported result: the command that produced it, the inputs it was
/// evaluated at, the exact result string, and its provenance.
///
/// The citation is never empty; entries without a claim to cite carry the
/// literal marker [`PLUMBING`].
#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    command: String,
    inputs: Vec<String>,
    result: String,
    citation: String,
    kind: Derivation,
    /// Optional decimal rendering; never authoritative, the exact result
    /// string is.
    #[serde(skip_serializing_if = "Option::is_none")]
    approx: Option<String>,
}

fn normalize_citation(citation: &str) -> String {
    let trimmed = citation.trim();
    if trimmed.is_empty() { PLUMBING.to_string() } else { trimmed.to_string() }
}

impl ReportEntry {
    fn new(
        command: impl Into<String>,
        result: impl Into<String>,
        citation: &str,
        kind: Derivation,
    ) -> ReportEntry {
        ReportEntry {
            command: command.into(),
            inputs: Vec::new(),
            result: result.into(),
            citation: normalize_citation(citation),
            kind,
            approx: None,
        }
    }

    // ---- Constructors ----

    /// An entry for a value recomputed from first principles.
    pub fn derived(
        command: impl Into<String>,
        result: impl Into<String>,
        citation: &str,
    ) -> ReportEntry {
        ReportEntry::new(command, result, citation, Derivation::Derived)
    }

    /// An entry for a value quoted without rederivation.
    pub fn cited(
        command: impl Into<String>,
        result: impl Into<String>,
        citation: &str,
    ) -> ReportEntry {
        ReportEntry::new(command, result, citation, Derivation::Cited)
    }

    /// An entry for derived arithmetic on top of quoted inputs.
    pub fn hybrid(
        command: impl Into<String>,
        result: impl Into<String>,
        citation: &str,
    ) -> ReportEntry {
        ReportEntry::new(command, result, citation, Derivation::Hybrid)
    }

    /// Attaches the inputs the result was evaluated at, e.g. `a = 60`.
    pub fn with_inputs(mut self, inputs: Vec<String>) -> ReportEntry {
        self.inputs = inputs;
        self
    }

    /// Attaches a decimal rendering of an exact value. The rendering is
    /// marked non-authoritative wherever it is shown.
    pub fn with_approx_of(mut self, value: &Rat) -> ReportEntry {
        self.approx = Some(approx_string(value));
        self
    }

    // ---- Accessors ----

    pub fn command(&self) -> &str {
        &self.command
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn result(&self) -> &str {
        &self.result
    }

    pub fn citation(&self) -> &str {
        &self.citation
    }

    pub fn kind(&self) -> Derivation {
        self.kind
    }

    pub fn approx(&self) -> Option<&str> {
        self.approx.as_deref()
    }

    /// Renders the entry as a single human-readable line.
    pub fn render(&self) -> String {
        let mut line = self.command.clone();
        if !self.inputs.is_empty() {
            line.push_str(&format!(" ({})", self.inputs.join(", ")));
        }
        line.push_str(&format!(": {}", self.result));
        if let Some(approx) = &self.approx {
            line.push_str(&format!(" ~ {approx}"));
        }
        line.push_str(&format!("  [{}: {}]", self.kind, self.citation));
        line
    }
}

/// Formats a decimal approximation of an exact rational, tagged as
/// non-authoritative. Integers within f64's exact range print plainly.
pub fn approx_string(value: &Rat) -> String {
    let x = value.to_f64();
    let rendered = if value.is_integer() && x.abs() < 9.0e15 {
        format!("{x:.1}")
    } else {
        format!("{x:.6e}")
    };
    format!("{rendered} (not authoritative)")
}
