//! The `nef-cone` subcommand.

use mbar::nefcone::{nef_cone_with_sources, ray_to_divisor};
use mbar::Result;
use serde_json::{json, Value};

use crate::render::{small_value, Output};

/// Prints the canonical inequality list and the extremal rays for one
/// genus. The JSON shape is fixed: {genus, inequalities: [{row, family}],
/// rays: [[ints]]}.
pub fn run(genus: u32) -> Result<Output> {
    let (inequalities, cone) = nef_cone_with_sources(genus)?;

    let mut lines = vec![format!(
        "nef cone for genus {genus}, coordinates (a, b_0..b_{}) of a*lambda - sum b_i*delta_i",
        cone.dim() - 2
    )];
    lines.push(format!("inequalities ({}):", inequalities.len()));
    for ineq in &inequalities {
        lines.push(format!("  {ineq}  [family {}: {}]", ineq.source, ineq.source.describe()));
    }
    let rays = cone.rays();
    lines.push(format!("extremal rays ({}):", rays.len()));
    for ray in rays {
        let coords: Vec<String> = ray.iter().map(ToString::to_string).collect();
        lines.push(format!("  ({})  = {}", coords.join(", "), ray_to_divisor(ray)));
    }

    let json = json!({
        "genus": genus,
        "inequalities": inequalities
            .iter()
            .map(|ineq| {
                json!({
                    "row": ineq.coeffs.iter().map(small_value).collect::<Vec<Value>>(),
                    "family": ineq.source.to_string(),
                })
            })
            .collect::<Vec<Value>>(),
        "rays": rays
            .iter()
            .map(|ray| Value::Array(ray.iter().map(small_value).collect()))
            .collect::<Vec<Value>>(),
    });

    Ok(Output::new(lines, json))
}
