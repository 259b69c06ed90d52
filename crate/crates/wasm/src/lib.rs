//! Browser bindings. Every export returns a JSON string.

use amocnf::implication::PbGraph;
use amocnf::regular::{star_analysis_of, structure, StarReport, StructureReport};
use amocnf::verify::{check_encoding, check_p_conditions, check_prime, is_input_pc, FunctionSpec, PcReport};
use amocnf::{
    analyze_2cnf, bounds_table, generate, implication_graph, parse_dimacs, serialize_dimacs, BoundsRow, EncodingKind,
    Limits, TwoCnfDiagnostics,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest n for which the page runs the exhaustive input-level check.
pub const PC_CHECK_CAP: usize = 9;

/// Largest n accepted by the bounds chart.
pub const BOUNDS_CAP: usize = 100_000;

#[derive(Serialize)]
struct BoundsSeries {
    rows: Vec<BoundsRow>,
}

pub fn bounds_json(from: usize, to: usize) -> Result<String, String> {
    if to > BOUNDS_CAP {
        return Err(format!("n is capped at {BOUNDS_CAP}"));
    }
    let rows = bounds_table(from, to).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&BoundsSeries { rows }).expect("bounds serialize"))
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
enum Check {
    Done(PcReport),
    Skipped { reason: String },
}

#[derive(Serialize)]
struct Generated {
    kind: String,
    n: usize,
    auxiliaries: usize,
    clauses: usize,
    dimacs: String,
    encoding: Check,
    p_encoding: Check,
    input_pc: Check,
    prime: Check,
}

fn run(check: Result<PcReport, impl ToString>) -> Check {
    match check {
        Ok(report) => Check::Done(report),
        Err(e) => Check::Skipped { reason: e.to_string() },
    }
}

pub fn generate_json(kind: &str, n: usize) -> Result<String, String> {
    let parsed = EncodingKind::from_tag(kind, n, None, None).map_err(|e| e.to_string())?;
    let enc = generate(&parsed).map_err(|e| e.to_string())?;
    let limits = Limits::default();
    let function = if kind.contains("exone") {
        FunctionSpec::eo(enc.n())
    } else {
        FunctionSpec::amo(enc.n())
    };
    let input_pc = if enc.n() <= PC_CHECK_CAP {
        run(is_input_pc(&enc, &function, &limits))
    } else {
        Check::Skipped {
            reason: format!("exhaustive check runs for n ≤ {PC_CHECK_CAP}"),
        }
    };
    let out = Generated {
        kind: parsed.to_string(),
        n: enc.n(),
        auxiliaries: enc.auxiliaries().len(),
        clauses: enc.size(),
        dimacs: serialize_dimacs(&enc),
        encoding: run(check_encoding(&enc, &function, &limits)),
        p_encoding: run(check_p_conditions(&enc, &limits)),
        input_pc,
        prime: run(check_prime(enc.formula(), &limits)),
    };
    Ok(serde_json::to_string(&out).expect("reports serialize"))
}

#[derive(Serialize)]
struct StructureView {
    n: usize,
    clauses: usize,
    p_encoding: bool,
    structure: StructureReport,
    stars: Option<StarReport>,
    pb_graph: Option<PbGraph>,
    two_cnf: Option<TwoCnfDiagnostics>,
}

pub fn structure_json(dimacs: &str) -> Result<String, String> {
    let enc = parse_dimacs(dimacs).map_err(|e| e.to_string())?;
    let limits = Limits::default();
    let p_encoding = check_p_conditions(&enc, &limits).map_err(|e| e.to_string())?.verdict;
    let report = structure(&enc);
    let (stars, pb_graph, two_cnf) = if p_encoding && report.regular {
        let stars = star_analysis_of(&enc, &report).map_err(|e| e.to_string())?;
        let graph = implication_graph(&enc).map_err(|e| e.to_string())?;
        let two = if enc.formula().is_2cnf() {
            Some(analyze_2cnf(&enc, &limits).map_err(|e| e.to_string())?)
        } else {
            None
        };
        (Some(stars), graph.pb_graph, two)
    } else {
        (None, None, None)
    };
    let view = StructureView {
        n: enc.n(),
        clauses: enc.size(),
        p_encoding,
        structure: report,
        stars,
        pb_graph,
        two_cnf,
    };
    Ok(serde_json::to_string(&view).expect("reports serialize"))
}

/// Lower bounds and construction sizes for `from..=to`.
#[wasm_bindgen(js_name = boundsSeries)]
pub fn bounds_series(from: usize, to: usize) -> Result<String, JsError> {
    bounds_json(from, to).map_err(|e| JsError::new(&e))
}

/// Builds an encoding and runs the encoding, p-encoding, input-PC and
/// primality checks on it.
#[wasm_bindgen(js_name = generateAndVerify)]
pub fn generate_and_verify(kind: &str, n: usize) -> Result<String, JsError> {
    generate_json(kind, n).map_err(|e| JsError::new(&e))
}

/// Q-sets, regular-form conditions, stars and the partner-set graph of a
/// DIMACS encoding.
#[wasm_bindgen(js_name = structureView)]
pub fn structure_view(dimacs: &str) -> Result<String, JsError> {
    structure_json(dimacs).map_err(|e| JsError::new(&e))
}
