//! The `integrality analyze` subcommand.

use std::fs;
use std::path::Path;

use mbar::exact::MultiPoly;
use mbar::integrality::{admitted_lattice, analyze, format_form, simplify, Simplified};
use mbar::report::ReportEntry;
use mbar::{Error, Result};
use serde_json::{Map, Value};

use crate::render::{big_value, Output};

/// Enumerates the residues mod prime^power where the polynomial's values
/// are integral, optionally with a structured description of the set.
pub fn analyze_file(poly: &Path, prime: u64, power: u32, simplify_set: bool) -> Result<Output> {
    let text = fs::read_to_string(poly)
        .map_err(|err| Error::domain(format!("cannot read {}: {err}", poly.display())))?;
    let p = MultiPoly::from_json_str(&text)?;
    let condition = analyze(&p, prime, power)?;

    let inputs = vec![
        format!("poly = {}", poly.display()),
        format!("prime = {prime}"),
        format!("power = {power}"),
    ];
    let mut entries = vec![ReportEntry::derived(
        "admitted residues",
        format!(
            "{} of {} tuples mod {}",
            condition.count(),
            condition.total(),
            condition.modulus()
        ),
        "",
    )
    .with_inputs(inputs)];

    let mut extras = Map::new();
    extras.insert("prime".into(), Value::from(prime));
    extras.insert("power".into(), Value::from(power));
    extras.insert("modulus".into(), Value::from(condition.modulus()));
    extras.insert(
        "vars".into(),
        Value::Array(condition.vars().iter().map(|v| Value::String(v.clone())).collect()),
    );
    extras.insert("admitted".into(), Value::from(condition.count()));
    // The analyzer caps enumeration well below 2^64 grid points, so the
    // total always fits a u64.
    extras.insert("total".into(), Value::from(condition.total() as u64));

    if simplify_set {
        let description = simplify(&condition)?;
        entries.push(ReportEntry::derived("simplified condition", description.to_string(), ""));
        let (kind, clauses): (&str, Vec<String>) = match &description {
            Simplified::Always => ("always", Vec::new()),
            Simplified::Divisibilities { divisors } => (
                "divisibilities",
                divisors.iter().map(|(d, v)| format!("{d}|{v}")).collect(),
            ),
            Simplified::HyperplaneUnion { modulus, forms, vars } => (
                "hyperplane-union",
                forms.iter().map(|form| format_form(*modulus, form, vars)).collect(),
            ),
            Simplified::Lattice { .. } => ("lattice", vec![description.to_string()]),
            Simplified::Raw => ("raw", Vec::new()),
        };
        extras.insert(
            "simplified".into(),
            serde_json::json!({ "kind": kind, "clauses": clauses }),
        );

        // A lattice basis exists exactly when the admitted set is a
        // subgroup; the two structured outcomes above certify that.
        if matches!(
            description,
            Simplified::Divisibilities { .. } | Simplified::Lattice { .. }
        ) {
            let basis = admitted_lattice(&condition)?;
            let rows: Vec<String> = basis
                .iter()
                .map(|row| {
                    let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
                    format!("({})", parts.join(", "))
                })
                .collect();
            entries.push(ReportEntry::derived("admitted lattice basis", rows.join(", "), ""));
            extras.insert(
                "lattice_basis".into(),
                Value::Array(
                    basis
                        .iter()
                        .map(|row| Value::Array(row.iter().map(big_value).collect()))
                        .collect(),
                ),
            );
        }
    }

    Ok(Output::from_report("integrality analyze", entries, extras, Vec::new()))
}
