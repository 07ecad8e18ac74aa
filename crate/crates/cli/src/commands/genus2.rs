//! The `m2` subcommands: degree, conditions, minimize.

use mbar::ampleness::m2;
use mbar::exact::factorize;
use mbar::report::ReportEntry;
use mbar::Result;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::{minimize_output, Ctx};
use crate::render::{rat_value, Output};

const PAIRING_CITATION: &str =
    "cubic pairings of the Hodge and elliptic-tail classes on the genus-2 space";

/// Renders a prime factorization "2^2 * 3^2 * 5^5 * 7 * 826571".
pub fn factorization_text(n: &BigInt) -> Result<String> {
    let factors = factorize(n)?;
    let parts: Vec<String> = factors
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect();
    Ok(parts.join(" * "))
}

fn factorization_json(n: &BigInt) -> Result<Value> {
    let factors = factorize(n)?;
    Ok(Value::Array(
        factors
            .iter()
            .map(|(p, e)| json!({ "prime": p.to_string(), "exponent": e }))
            .collect(),
    ))
}

/// Evaluates D^3 for D = a*lambda + b*delta_1 and, when the result is a
/// positive integer, appends its prime factorization.
pub fn degree(ctx: &Ctx, a: i64, b: i64) -> Result<Output> {
    let value = m2::degree_of(a, b)?;
    let entry = ctx.tag(
        ReportEntry::hybrid("degree of D^3 on the genus-2 space", value.to_string(), PAIRING_CITATION)
            .with_inputs(vec![format!("a = {a}"), format!("b = {b}")]),
        &value,
    );

    let mut extras = Map::new();
    extras.insert("a".into(), Value::from(a));
    extras.insert("b".into(), Value::from(b));
    extras.insert("degree".into(), rat_value(&value));

    let mut detail = vec!["divisor: D = a*lambda + b*delta_1".to_string()];
    if value.is_integer() && value.is_positive() {
        detail.push(format!("factorization: {}", factorization_text(value.numer())?));
        extras.insert("factorization".into(), factorization_json(value.numer())?);
    }

    Ok(Output::from_report("m2 degree", vec![entry], extras, detail))
}

/// The divisibility conditions on (a, b) for integral degrees: the
/// per-prime residue analyses, the combined lattice, the 2-cycle pairings,
/// and the quoted remarks that sit alongside them.
pub fn conditions() -> Result<Output> {
    let analysis = m2::divisibility_conditions()?;
    let mut entries = Vec::new();
    let mut detail = vec!["divisor: D = a*lambda + b*delta_1".to_string()];

    for breakdown in &analysis.per_prime {
        entries.push(ReportEntry::derived(
            format!("prime {} condition", breakdown.prime),
            format!(
                "{} (exact at {}^{})",
                breakdown.simplified, breakdown.prime, breakdown.precision
            ),
            "residue conditions forced on (a, b) by an integral degree",
        ));
    }

    let lattice: Vec<String> =
        analysis.divisors.iter().map(|(d, v)| format!("{d}|{v}")).collect();
    entries.push(ReportEntry::derived(
        "admitted lattice",
        lattice.join(" and "),
        "divisibility of the coefficients of a very ample class in genus 2",
    ));

    let cycles = m2::cycle_checks()?;
    for check in &cycles {
        let (result, display) = match &check.outcome {
            m2::CycleOutcome::Integral => ("integral on the admitted lattice".to_string(), None),
            m2::CycleOutcome::Conditional { display, .. } => {
                (format!("integral exactly when {display}"), Some(display.clone()))
            }
        };
        let scale = if check.orbifold { "orbifold fundamental class" } else { "coarse class" };
        entries.push(ReportEntry::hybrid(
            format!("{} ({scale})", check.label),
            result,
            "degrees of D^2 against boundary and Hodge 2-cycles",
        ));
        if let Some(display) = display {
            detail.push(format!("extra condition beyond the lattice: {display}"));
        }
    }

    let remarks = m2::cited_remarks();
    for remark in &remarks {
        entries.push(ReportEntry::cited("quoted remark", remark.text.clone(), &remark.label));
    }

    let mut extras = Map::new();
    extras.insert(
        "per_prime".into(),
        Value::Array(
            analysis
                .per_prime
                .iter()
                .map(|b| {
                    json!({
                        "prime": b.prime,
                        "precision": b.precision,
                        "condition": b.simplified.to_string(),
                        "admitted": b.condition.count(),
                        "total": b.condition.total() as u64,
                        "citation": "residue conditions forced on (a, b) by an integral degree",
                    })
                })
                .collect(),
        ),
    );
    extras.insert(
        "lattice".into(),
        Value::Array(lattice.iter().map(|s| Value::String(s.clone())).collect()),
    );
    extras.insert(
        "cycles".into(),
        Value::Array(
            cycles
                .iter()
                .map(|check| {
                    let outcome = match &check.outcome {
                        m2::CycleOutcome::Integral => Value::String("integral".into()),
                        m2::CycleOutcome::Conditional { display, .. } => {
                            json!({ "conditional": display })
                        }
                    };
                    json!({
                        "label": check.label,
                        "orbifold": check.orbifold,
                        "outcome": outcome,
                        "citation": "degrees of D^2 against boundary and Hodge 2-cycles",
                    })
                })
                .collect(),
        ),
    );
    extras.insert(
        "remarks".into(),
        Value::Array(
            remarks
                .iter()
                .map(|r| json!({ "label": r.label, "text": r.text }))
                .collect(),
        ),
    );

    Ok(Output::from_report("m2 conditions", entries, extras, detail))
}

/// Minimizes D^3 over ample classes on the admitted lattice. With
/// `--seed-box` the scan runs over the given box in the scaled coordinates
/// instead of the ray-certified one.
pub fn minimize(ctx: &Ctx) -> Result<Output> {
    let md = match &ctx.seed_box {
        Some(bounds) => m2::minimum_degree_in_box(bounds)?,
        None => m2::minimum_degree()?,
    };
    Ok(minimize_output(
        "m2 minimize",
        "(a, b)",
        &md,
        ctx,
        "minimal degree of a projective embedding of the genus-2 space",
    ))
}
