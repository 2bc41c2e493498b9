//! Browser bindings. Each export takes group descriptions (a builtin name
//! or an inline JSON spec) and returns a report as a JSON string.

use centrum::builtin::CORPUS;
use centrum::cli_io::report::{chartable_data, classes_data, GroupEcho, Report, SpaceEcho};
use centrum::cli_io::resolve_group_arg;
use centrum::iso::{candidate_checks, search_integral_isomorphisms, space_sizes, Check, IsoProblem, SearchOptions};
use centrum::CenterData;
use wasm_bindgen::prelude::*;

fn load(arg: &str) -> Result<CenterData, String> {
    let (name, g) = resolve_group_arg(arg).map_err(|e| e.to_string())?;
    CenterData::new(name, g).map_err(|e| e.to_string())
}

pub fn group_names() -> String {
    serde_json::to_string(CORPUS).expect("names serialize")
}

pub fn classes(spec: &str) -> Result<String, String> {
    let g = load(spec)?;
    let mut r = Report::new("classes");
    r.groups = vec![GroupEcho::of(&g)];
    r.data = Some(classes_data(&g));
    Ok(r.to_json())
}

pub fn character_table(spec: &str) -> Result<String, String> {
    let g = load(spec)?;
    let mut r = Report::new("chartable");
    r.groups = vec![GroupEcho::of(&g)];
    r.conductor = Some(g.table.conductor());
    r.data = Some(chartable_data(&g));
    Ok(r.to_json())
}

/// Integral isomorphisms between the two centers, at most `budget`
/// permutations visited.
pub fn find_isomorphisms(src: &str, dst: &str, budget: u64) -> Result<String, String> {
    let (a, b) = (load(src)?, load(dst)?);
    let options = SearchOptions {
        budget: budget as u128,
        threads: 1,
        galois_prune: true,
    };
    let mut r = Report::new("iso");
    r.groups = vec![GroupEcho::of(&a), GroupEcho::of(&b)];
    let Ok(problem) = IsoProblem::new(&a, &b) else {
        r.checks
            .push(Check::pass("orders or class counts differ: no candidates"));
        return Ok(r.to_json());
    };
    let (degree_pruned, visited) = space_sizes(&problem, &options);
    r.conductor = Some(problem.conductor());
    r.search_space = Some(SpaceEcho { degree_pruned, visited });
    r.candidates = search_integral_isomorphisms(&problem, &options)
        .map_err(|e| e.to_string())?
        .candidates;
    candidate_checks(&problem, &r.candidates, &mut r.checks);
    Ok(r.to_json())
}

#[wasm_bindgen(js_name = groupNames)]
pub fn group_names_js() -> String {
    group_names()
}

#[wasm_bindgen(js_name = classes)]
pub fn classes_js(spec: &str) -> Result<String, JsError> {
    classes(spec).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = characterTable)]
pub fn character_table_js(spec: &str) -> Result<String, JsError> {
    character_table(spec).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = findIsomorphisms)]
pub fn find_isomorphisms_js(src: &str, dst: &str, budget: u64) -> Result<String, JsError> {
    find_isomorphisms(src, dst, budget).map_err(|e| JsError::new(&e))
}
