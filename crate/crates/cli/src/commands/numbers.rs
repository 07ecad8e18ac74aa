//! The `hg`, `lambda`, `kappa`, and `testsurface` subcommands.

use mbar::lambdanum::hyperelliptic::{hyperelliptic_degree, lambda6_m3_routes};
use mbar::lambdanum::inputs::CitedInputs;
use mbar::lambdanum::kappa::{kappa1_top_check, witten_check, KappaTable};
use mbar::lambdanum::m4::{
    lambda7_delta1_squared, lambda7_kappa2, lambda9_m4, restricted_hyperelliptic_class,
};
use mbar::lambdanum::schottky::{
    cube_multiple_in, lambda3_cubed_in, lambda6_a3, product_multiple_in, proportionality,
    schottky_multiple_in,
};
use mbar::lambdanum::surfaces::solve_test_surfaces;
use mbar::report::ReportEntry;
use mbar::Result;
use serde_json::{json, Map, Value};

use super::Ctx;
use crate::render::{rat_value, Output};

// ---- Hyperelliptic degrees ----

/// The degree of the closed hyperelliptic locus against the top lambda
/// power, h(g) in the orbifold normalization.
pub fn hg(ctx: &Ctx, genus: u32) -> Result<Output> {
    let value = hyperelliptic_degree(genus)?;
    let entry = if genus == 1 {
        let seed = CitedInputs::builtin().scalar("hyperelliptic_seed_genus_one")?;
        ReportEntry::cited("hyperelliptic degree h(1)", value.to_string(), seed.citation())
    } else {
        ReportEntry::hybrid(
            format!("hyperelliptic degree h({genus})"),
            value.to_string(),
            "split-curve recursion on the hyperelliptic degrees, seeded at genus 1",
        )
    }
    .with_inputs(vec![format!("genus = {genus}")]);
    let entry = ctx.tag(entry, &value);

    let mut extras = Map::new();
    extras.insert("genus".into(), Value::from(genus));
    extras.insert("value".into(), rat_value(&value));
    Ok(Output::from_report("hg", vec![entry], extras, Vec::new()))
}

// ---- Lambda numbers ----

/// lambda^6 on the genus-3 space along both routes.
pub fn lambda_m3_l6(ctx: &Ctx) -> Result<Output> {
    let routes = lambda6_m3_routes()?;
    let class_citation = CitedInputs::builtin().genus3_hyperelliptic_class().citation();
    let entries = vec![
        ctx.tag(
            ReportEntry::hybrid(
                "lambda^6 via the hyperelliptic class",
                routes.via_hyperelliptic.to_string(),
                class_citation,
            ),
            &routes.via_hyperelliptic,
        ),
        ctx.tag(
            ReportEntry::hybrid(
                "lambda^6 via the degree-form table",
                routes.via_table.to_string(),
                "pure lambda coefficient of the sextic intersection form",
            ),
            &routes.via_table,
        ),
        ReportEntry::derived(
            "route agreement",
            "both routes give the same value".to_string(),
            "",
        ),
    ];

    let mut extras = Map::new();
    extras.insert("via_hyperelliptic".into(), rat_value(&routes.via_hyperelliptic));
    extras.insert("via_table".into(), rat_value(&routes.via_table));
    extras.insert("value".into(), rat_value(&routes.via_table));
    Ok(Output::from_report("lambda m3-l6", entries, extras, Vec::new()))
}

/// lambda^9 on the genus-4 space via the hyperelliptic pairing chain,
/// with the kappa_2 pairing as a byproduct.
pub fn lambda_m4_l9(ctx: &Ctx) -> Result<Output> {
    let restricted = restricted_hyperelliptic_class()?;
    let tail = lambda7_delta1_squared()?;
    let value = lambda9_m4()?;
    let kappa2 = lambda7_kappa2()?;
    let inputs = CitedInputs::builtin();

    let entries = vec![
        ReportEntry::hybrid(
            "hyperelliptic class against lambda^7",
            format!(
                "({})*lambda^2 + ({})*delta_1^2",
                restricted.lambda_sq, restricted.delta1_sq
            ),
            "hyperelliptic class ansatz reduced by the quoted kernel relation",
        ),
        ctx.tag(
            ReportEntry::hybrid(
                "lambda^7 . delta_1^2",
                tail.to_string(),
                "elliptic-tail evaluation against the genus-3 top lambda number",
            ),
            &tail,
        ),
        ctx.tag(
            ReportEntry::hybrid(
                "lambda^9 on the genus-4 space",
                value.to_string(),
                "hyperelliptic degree paired against the restricted class",
            ),
            &value,
        ),
        ctx.tag(
            ReportEntry::hybrid(
                "byproduct lambda^7 . kappa_2",
                kappa2.to_string(),
                inputs.kernel_relation().citation(),
            ),
            &kappa2,
        ),
    ];

    let mut extras = Map::new();
    extras.insert(
        "restricted_class".into(),
        json!({
            "lambda_sq": restricted.lambda_sq.to_string(),
            "delta1_sq": restricted.delta1_sq.to_string(),
        }),
    );
    extras.insert("lambda7_delta1_sq".into(), rat_value(&tail));
    extras.insert("value".into(), rat_value(&value));
    extras.insert("lambda7_kappa2".into(), rat_value(&kappa2));
    Ok(Output::from_report("lambda m4-l9", entries, extras, Vec::new()))
}

/// lambda_3^3 on the genus-4 space: the symbolic reduction to the top
/// lambda power, times lambda^9.
pub fn lambda_l3cubed(ctx: &Ctx) -> Result<Output> {
    let ring = ctx.ring();
    let multiple = cube_multiple_in(ring)?;
    let value = lambda3_cubed_in(ring)?;

    let entries = vec![
        ctx.tag(
            ReportEntry::derived(
                "symbolic multiple of the top power for lambda_3^3",
                multiple.to_string(),
                "rewrite rules forced by the vanishing Chern classes of the \
                 Hodge bundle plus its dual",
            ),
            &multiple,
        ),
        ctx.tag(
            ReportEntry::hybrid(
                "lambda_3^3 on the genus-4 space",
                value.to_string(),
                "symbolic reduction times the top lambda number",
            ),
            &value,
        ),
    ];

    let mut extras = Map::new();
    extras.insert("presentation".into(), Value::String(ring.name().to_string()));
    extras.insert("cube_multiple".into(), rat_value(&multiple));
    extras.insert("value".into(), rat_value(&value));
    Ok(Output::from_report("lambda l3cubed", entries, extras, Vec::new()))
}

/// The multiple of lambda representing the Jacobian locus among
/// principally polarized abelian fourfolds, with the genus-3 aside.
pub fn lambda_schottky(ctx: &Ctx) -> Result<Output> {
    let ring = ctx.ring();
    let prop4 = proportionality(4)?;
    let product = product_multiple_in(ring)?;
    let schottky = schottky_multiple_in(ring)?;
    let threefold = lambda6_a3()?;
    let halving = CitedInputs::builtin().scalar("torelli_double_cover_factor")?;

    let entries = vec![
        ctx.tag(
            ReportEntry::derived(
                "proportionality degree in genus 4",
                prop4.to_string(),
                "product of the Bernoulli factors |B_2i|/(4i)",
            ),
            &prop4,
        ),
        ctx.tag(
            ReportEntry::derived(
                "symbolic multiple of the top power for lambda_2 lambda_3 lambda_4",
                product.to_string(),
                "rewrite rules forced by the vanishing Chern classes of the \
                 Hodge bundle plus its dual",
            ),
            &product,
        ),
        ctx.tag(
            ReportEntry::derived(
                "lambda^10 on the moduli of abelian fourfolds",
                schottky.lambda10.to_string(),
                "proportionality degree divided by the symbolic product multiple",
            ),
            &schottky.lambda10,
        ),
        ctx.tag(
            ReportEntry::hybrid(
                "pairing of the Jacobian locus with lambda^9",
                schottky.jacobian_pairing.to_string(),
                "top lambda number transported from the genus-4 space",
            ),
            &schottky.jacobian_pairing,
        ),
        ReportEntry::hybrid(
            "Jacobian locus as a multiple of lambda",
            format!("{} (orbifold reading {})", schottky.multiple, schottky.q_multiple),
            halving.citation(),
        ),
        ctx.tag(
            ReportEntry::hybrid(
                "lambda^6 on the moduli of abelian threefolds, both routes",
                threefold.via_torelli.to_string(),
                "dense Jacobian locus halved by the extra inversion automorphism",
            ),
            &threefold.via_torelli,
        ),
    ];

    let mut extras = Map::new();
    extras.insert("presentation".into(), Value::String(ring.name().to_string()));
    extras.insert("proportionality_g4".into(), rat_value(&prop4));
    extras.insert("product_multiple".into(), rat_value(&product));
    extras.insert("lambda10".into(), rat_value(&schottky.lambda10));
    extras.insert("jacobian_pairing".into(), rat_value(&schottky.jacobian_pairing));
    extras.insert("multiple".into(), rat_value(&schottky.multiple));
    extras.insert("q_multiple".into(), rat_value(&schottky.q_multiple));
    extras.insert("abelian_threefold_lambda6".into(), rat_value(&threefold.via_torelli));
    Ok(Output::from_report("lambda schottky", entries, extras, Vec::new()))
}

// ---- Kappa table ----

/// Prints the quoted table of kappa monomial degrees of weight 6.
pub fn kappa_table() -> Result<Output> {
    let table = KappaTable::builtin_m3();
    let entries: Vec<ReportEntry> = table
        .entries()
        .iter()
        .map(|e| ReportEntry::cited(e.label(), e.value().to_string(), table.citation()))
        .collect();

    let mut extras = Map::new();
    extras.insert("name".into(), Value::String(table.name().to_string()));
    extras.insert("description".into(), Value::String(table.description().to_string()));
    extras.insert("citation".into(), Value::String(table.citation().to_string()));
    extras.insert(
        "entries".into(),
        serde_json::to_value(table.entries()).expect("kappa entries serialize"),
    );
    Ok(Output::from_report("kappa table", entries, extras, Vec::new()))
}

/// Checks the stored table against the gravity constant and against the
/// divisor pipeline.
pub fn witten_check_cmd(ctx: &Ctx) -> Result<Output> {
    let gravity = witten_check(3)?;
    let top = kappa1_top_check()?;
    let table = KappaTable::builtin_m3();

    let verdict = |agree: bool| if agree { "agree" } else { "DISAGREE" };
    let entries = vec![
        ctx.tag(
            ReportEntry::hybrid(
                "kappa_6 against the gravity constant",
                format!(
                    "stored {}, formula {}, {}",
                    gravity.stored,
                    gravity.formula,
                    verdict(gravity.agree)
                ),
                table.citation(),
            ),
            &gravity.formula,
        ),
        ctx.tag(
            ReportEntry::hybrid(
                "kappa_1^6 against the divisor pipeline",
                format!("stored {}, derived {}, {}", top.stored, top.derived, verdict(top.agree)),
                "pure kappa_1 entry recomputed from the divisor expression of kappa_1",
            ),
            &top.derived,
        ),
    ];

    let mut extras = Map::new();
    extras.insert(
        "witten".into(),
        json!({
            "stored": gravity.stored.to_string(),
            "formula": gravity.formula.to_string(),
            "agree": gravity.agree,
        }),
    );
    extras.insert(
        "kappa1_top".into(),
        json!({
            "stored": top.stored.to_string(),
            "derived": top.derived.to_string(),
            "agree": top.agree,
        }),
    );
    Ok(Output::from_report("kappa witten-check", entries, extras, Vec::new()))
}

// ---- Test surfaces ----

/// Solves the quoted test-surface equations for the coefficients of the
/// genus-4 hyperelliptic class ansatz.
pub fn testsurface_solve() -> Result<Output> {
    let solved = solve_test_surfaces()?;
    let inputs = CitedInputs::builtin();

    let mut entries: Vec<ReportEntry> = solved
        .determined()
        .iter()
        .map(|(name, value)| {
            ReportEntry::hybrid(
                format!("coefficient {name}"),
                value.to_string(),
                "linear relations cut out by the quoted test surfaces",
            )
        })
        .collect();
    entries.push(ReportEntry::derived(
        "free coefficients",
        solved.free().join(", "),
        "not determined by the seven quoted surfaces",
    ));

    let detail = vec![format!(
        "rank {} from {} equations; {} of {} ansatz coefficients determined",
        solved.rank(),
        solved.n_equations(),
        solved.determined().len(),
        solved.determined().len() + solved.free().len(),
    )];

    let mut extras = Map::new();
    let determined: Map<String, Value> = solved
        .determined()
        .iter()
        .map(|(name, value)| (name.clone(), rat_value(value)))
        .collect();
    extras.insert("determined".into(), Value::Object(determined));
    extras.insert(
        "free".into(),
        Value::Array(solved.free().iter().map(|s| Value::String(s.clone())).collect()),
    );
    extras.insert("rank".into(), Value::from(solved.rank() as u64));
    extras.insert("equations".into(), Value::from(solved.n_equations() as u64));
    extras.insert(
        "surfaces".into(),
        Value::Array(
            inputs
                .surfaces()
                .iter()
                .map(|s| json!({ "label": s.label(), "citation": s.citation() }))
                .collect(),
        ),
    );
    Ok(Output::from_report("testsurface solve", entries, extras, detail))
}
