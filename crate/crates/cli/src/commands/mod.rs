//! Subcommand implementations.

pub mod genus2;
pub mod genus3;
pub mod integrality;
pub mod nefcone;
pub mod numbers;

use std::fs;
use std::path::Path;

use mbar::ampleness::minimize::MinimumDegree;
use mbar::chowring::RingPresentation;
use mbar::exact::Rat;
use mbar::report::ReportEntry;
use mbar::{Error, Result};
use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::render::{self, Output};

/// Options shared by every subcommand: the decimal-rendering switch, the
/// optional explicit minimizer box, and the optional presentation override.
pub struct Ctx {
    pub approx: bool,
    pub seed_box: Option<Vec<(BigInt, BigInt)>>,
    pub presentation: Option<RingPresentation>,
}

impl Ctx {
    pub fn new(approx: bool, seed_box: Option<&str>, presentation: Option<&Path>) -> Result<Ctx> {
        let seed_box = seed_box.map(parse_seed_box).transpose()?;
        let presentation = presentation
            .map(|path| {
                let text = fs::read_to_string(path).map_err(|err| {
                    Error::domain(format!("cannot read {}: {err}", path.display()))
                })?;
                RingPresentation::from_json_str(&text)
            })
            .transpose()?;
        Ok(Ctx { approx, seed_box, presentation })
    }

    /// Attaches a decimal rendering to the entry when `--approx` is on.
    pub fn tag(&self, entry: ReportEntry, value: &Rat) -> ReportEntry {
        if self.approx {
            entry.with_approx_of(value)
        } else {
            entry
        }
    }

    /// The presentation to reduce in: the supplied one, or the built-in
    /// genus-4 presentation.
    pub fn ring(&self) -> &RingPresentation {
        self.presentation.as_ref().unwrap_or_else(|| RingPresentation::builtin_mumford_m4())
    }
}

/// Parses a box specification "LO..HI,LO..HI,..." with inclusive bounds.
fn parse_seed_box(ranges: &str) -> Result<Vec<(BigInt, BigInt)>> {
    let mut bounds = Vec::new();
    for part in ranges.split(',') {
        let (lo, hi) = part
            .split_once("..")
            .ok_or_else(|| Error::domain(format!("seed box range {part:?} is not LO..HI")))?;
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("seed box bound {lo:?} is not an integer")))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("seed box bound {hi:?} is not an integer")))?;
        if lo > hi {
            return Err(Error::domain(format!("seed box range {part:?} is empty")));
        }
        bounds.push((BigInt::from(lo), BigInt::from(hi)));
    }
    if bounds.is_empty() {
        return Err(Error::domain("the seed box has no coordinate ranges"));
    }
    Ok(bounds)
}

/// Shared rendering for the two minimizers: the headline entry, the frame,
/// and either the ray certificate or the box-scan summary.
pub fn minimize_output(
    command: &str,
    coefficients: &str,
    md: &MinimumDegree,
    ctx: &Ctx,
    citation: &str,
) -> Output {
    let degree = Rat::from(md.degree.clone());
    let entry = ctx.tag(
        ReportEntry::hybrid(
            command,
            format!("{} at {coefficients} = {}", md.degree, render::tuple_text(&md.divisor)),
            citation,
        ),
        &degree,
    );

    let mut detail = vec![format!("frame: {}", md.frame)];
    if md.outcome.rays.is_empty() {
        detail.push("search: explicit box scan, no ray certificate".to_string());
    } else {
        detail.push("extremal rays of the feasible cone (scaled coordinates):".to_string());
        for (ray, value) in md.outcome.rays.iter().zip(&md.outcome.ray_values) {
            detail.push(format!("  {} with objective {value}", render::tuple_text(ray)));
        }
    }
    let box_text: Vec<String> = md
        .outcome
        .final_box
        .iter()
        .map(|(lo, hi)| format!("[{lo}, {hi}]"))
        .collect();
    let pass_word = if md.outcome.passes == 1 { "pass" } else { "passes" };
    detail.push(format!(
        "scanned box: {} in {} {pass_word}",
        box_text.join(" x "),
        md.outcome.passes
    ));

    let mut extras = Map::new();
    extras.insert("frame".into(), Value::String(md.frame.clone()));
    extras.insert("minimum".into(), render::big_value(&md.degree));
    extras.insert("divisor".into(), render::bigs_value(&md.divisor));
    extras.insert("argmin_scaled".into(), render::bigs_value(&md.outcome.argmin));
    extras.insert(
        "rays".into(),
        Value::Array(md.outcome.rays.iter().map(|r| render::bigs_value(r)).collect()),
    );
    extras.insert(
        "ray_values".into(),
        Value::Array(md.outcome.ray_values.iter().map(render::rat_value).collect()),
    );
    extras.insert(
        "box".into(),
        Value::Array(
            md.outcome
                .final_box
                .iter()
                .map(|(lo, hi)| Value::Array(vec![render::big_value(lo), render::big_value(hi)]))
                .collect(),
        ),
    );
    extras.insert("passes".into(), Value::from(md.outcome.passes));

    Output::from_report(command, vec![entry], extras, detail)
}
