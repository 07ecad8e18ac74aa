//! The `m3` subcommands: degree, conditions, mod-chain, minimize.

use mbar::ampleness::chain::{Basis, ChainStep, Verification};
use mbar::ampleness::m3;
use mbar::report::{ReportEntry, PLUMBING};
use mbar::Result;
use serde_json::{json, Map, Value};

use super::genus2::factorization_text;
use super::{minimize_output, Ctx};
use crate::render::{rat_value, Output};

const TABLE_CITATION: &str =
    "sextic intersection pairings of the Hodge and boundary classes on the genus-3 space";

/// The basis kind and citation of a chain step, in report vocabulary.
fn basis_parts(basis: &Basis) -> (&'static str, String) {
    match basis {
        Basis::Derived => ("derived", PLUMBING.to_string()),
        Basis::Cited(label) => ("cited", label.clone()),
        Basis::Hybrid(label) => ("hybrid", label.clone()),
    }
}

fn step_json(step: &ChainStep) -> Value {
    let (kind, citation) = basis_parts(&step.basis);
    json!({
        "title": step.title,
        "prime": step.prime,
        "claim": step.kind.to_string(),
        "basis": kind,
        "citation": citation,
        "condition": step.display,
        "adopted": step.adopted,
        "admitted": step.admitted.map(|(count, _)| count),
        "total": step.admitted.map(|(_, total)| total as u64),
        "checked": step.verification == Verification::Checked,
    })
}

/// Evaluates D^6 for D = a*lambda - b*delta_0 - c*delta_1 and, when the
/// result is a positive integer, appends its prime factorization.
pub fn degree(ctx: &Ctx, a: i64, b: i64, c: i64) -> Result<Output> {
    let value = m3::degree_of(a, b, c)?;
    let entry = ctx.tag(
        ReportEntry::hybrid("degree of D^6 on the genus-3 space", value.to_string(), TABLE_CITATION)
            .with_inputs(vec![format!("a = {a}"), format!("b = {b}"), format!("c = {c}")]),
        &value,
    );

    let mut extras = Map::new();
    extras.insert("a".into(), Value::from(a));
    extras.insert("b".into(), Value::from(b));
    extras.insert("c".into(), Value::from(c));
    extras.insert("degree".into(), rat_value(&value));

    let mut detail = vec!["divisor: D = a*lambda - b*delta_0 - c*delta_1".to_string()];
    if value.is_integer() && value.is_positive() {
        detail.push(format!("factorization: {}", factorization_text(value.numer())?));
        let factors = mbar::exact::factorize(value.numer())?;
        extras.insert(
            "factorization".into(),
            Value::Array(
                factors
                    .iter()
                    .map(|(p, e)| json!({ "prime": p.to_string(), "exponent": e }))
                    .collect(),
            ),
        );
    }

    Ok(Output::from_report("m3 degree", vec![entry], extras, detail))
}

fn chain_summary(chain: &m3::DivisibilityChain) -> (Vec<ReportEntry>, Map<String, Value>) {
    let lattice: Vec<String> = chain.divisors.iter().map(|(d, v)| format!("{d}|{v}")).collect();
    let lattice_kind = if chain.includes_cited {
        ReportEntry::hybrid(
            "admitted lattice",
            lattice.join(" and "),
            "divisibility of the coefficients of a very ample class in genus 3",
        )
    } else {
        ReportEntry::derived(
            "admitted lattice",
            lattice.join(" and "),
            "conditions derivable from the degree form and boundary pairings alone",
        )
    };
    let mut entries = vec![lattice_kind];
    if let Some(residual) = &chain.residual {
        entries.push(ReportEntry::derived(
            "open residual condition",
            residual.clone(),
            "necessary condition left unresolved without the quoted cycle pairings",
        ));
    }

    let mut extras = Map::new();
    extras.insert(
        "lattice".into(),
        Value::Array(lattice.iter().map(|s| Value::String(s.clone())).collect()),
    );
    extras.insert("frame".into(), Value::String(chain.frame.clone()));
    extras.insert("includes_cited".into(), Value::Bool(chain.includes_cited));
    extras.insert(
        "residual".into(),
        chain.residual.clone().map_or(Value::Null, Value::String),
    );
    (entries, extras)
}

/// The accumulated divisibility conditions on (a, b, c), without replaying
/// every chain step.
pub fn conditions(skip_cited: bool) -> Result<Output> {
    let chain = m3::divisibility_chain(!skip_cited)?;
    let (entries, mut extras) = chain_summary(&chain);
    extras.insert("steps".into(), Value::from(chain.steps.len()));
    let detail = vec![
        "divisor: D = a*lambda - b*delta_0 - c*delta_1".to_string(),
        format!("frame: {}", chain.frame),
        format!("steps: {} (replay with `m3 mod-chain`)", chain.steps.len()),
    ];
    Ok(Output::from_report("m3 conditions", entries, extras, detail))
}

/// Replays the modular chain step by step, each step labeled with what it
/// claims, where it comes from, and whether it was machine-checked.
pub fn mod_chain(skip_cited: bool) -> Result<Output> {
    let chain = m3::divisibility_chain(!skip_cited)?;

    let mut detail = vec!["divisor: D = a*lambda - b*delta_0 - c*delta_1".to_string()];
    for (index, step) in chain.steps.iter().enumerate() {
        detail.push(format!("step {}: {step}", index + 1));
    }
    detail.push(format!("frame: {}", chain.frame));

    let (entries, mut extras) = chain_summary(&chain);
    extras.insert(
        "steps".into(),
        Value::Array(chain.steps.iter().map(step_json).collect()),
    );

    Ok(Output::from_report("m3 mod-chain", entries, extras, detail))
}

/// Minimizes D^6 over ample classes on the admitted lattice. With
/// `--seed-box` the scan runs over the given box in the scaled coordinates
/// instead of the ray-certified one.
pub fn minimize(ctx: &Ctx) -> Result<Output> {
    let md = match &ctx.seed_box {
        Some(bounds) => m3::minimum_degree_in_box(bounds)?,
        None => m3::minimum_degree()?,
    };
    Ok(minimize_output(
        "m3 minimize",
        "(a, b, c)",
        &md,
        ctx,
        "minimal degree of a projective embedding of the genus-3 space",
    ))
}
