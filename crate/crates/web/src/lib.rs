//! Browser demo: explore atoms, spectra and distance powers of Cayley graphs.
//!
//! Every export takes plain strings in the CLI syntax and returns a JSON
//! string; `www/index.html` draws the results.

use cayley_spectra::algebra::{atom_partition, in_boolean_algebra, is_gcd_set};
use cayley_spectra::graph::{
    distance_power_shift, distance_profile, parse_distance_set, CayleyGraph,
};
use cayley_spectra::group::{GroupSpec, GroupSubset};
use cayley_spectra::spectral::{integrality_verdict, spectrum};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Graphs above this order are refused; the page draws every vertex.
pub const MAX_DEMO_ORDER: usize = 256;

fn parse_group(text: &str) -> Result<GroupSpec, String> {
    let g: GroupSpec = text.parse().map_err(|e| format!("{e}"))?;
    g.check_cap(MAX_DEMO_ORDER).map_err(|e| format!("{e}"))?;
    Ok(g)
}

fn parse_graph(group: &str, subset: &str) -> Result<CayleyGraph, String> {
    let g = parse_group(group)?;
    let s = GroupSubset::parse(&g, subset).map_err(|e| format!("{e}"))?;
    CayleyGraph::new(s).map_err(|e| format!("{e}"))
}

fn labels(g: &GroupSpec) -> Vec<String> {
    g.elements().map(|e| e.to_string()).collect()
}

/// Atoms with their representatives, orders and canonical indices.
pub fn atoms_json(group: &str) -> Result<String, String> {
    let g = parse_group(group)?;
    let part = atom_partition(&g);
    let atoms: Vec<_> = part
        .describe()
        .into_iter()
        .zip(part.atoms())
        .map(|(info, set)| {
            json!({
                "representative": info.representative.to_string(),
                "order": info.order,
                "indices": set.indices().collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({ "group": g.label(), "labels": labels(&g), "atoms": atoms }).to_string())
}

/// Eigenvalues (real parts, canonical character order) with both integrality verdicts.
pub fn spectrum_json(group: &str, subset: &str, tol: f64) -> Result<String, String> {
    let graph = parse_graph(group, subset)?;
    let spec = spectrum(graph.shift()).map_err(|e| format!("{e}"))?;
    let verdict = integrality_verdict(graph.shift(), tol);
    let eigenvalues: Vec<f64> = spec.values().iter().map(|v| v.re).collect();
    Ok(json!({
        "group": graph.group().label(),
        "labels": labels(graph.group()),
        "shift": graph.shift().indices().collect::<Vec<_>>(),
        "eigenvalues": eigenvalues,
        "structural": verdict.structural,
        "spectral": verdict.spectral,
        "profile": distance_profile(&graph),
    })
    .to_string())
}

/// The shift set of the distance power `G^D`, with its integrality status.
pub fn distance_power_json(group: &str, subset: &str, distances: &str) -> Result<String, String> {
    let graph = parse_graph(group, subset)?;
    let d = parse_distance_set(distances).map_err(|e| format!("{e}"))?;
    let shift = distance_power_shift(&graph, &d);
    Ok(json!({
        "group": graph.group().label(),
        "labels": labels(graph.group()),
        "shift": shift.indices().collect::<Vec<_>>(),
        "profile": distance_profile(&graph),
        "in_boolean_algebra": in_boolean_algebra(&shift),
        "is_gcd_set": is_gcd_set(&shift),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn atoms(group: &str) -> Result<String, JsError> {
    atoms_json(group).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn cayley_spectrum(group: &str, subset: &str, tol: f64) -> Result<String, JsError> {
    spectrum_json(group, subset, tol).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn distance_power(group: &str, subset: &str, distances: &str) -> Result<String, JsError> {
    distance_power_json(group, subset, distances).map_err(|e| JsError::new(&e))
}
