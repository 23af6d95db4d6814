//! Deterministic output: a stable envelope around JSON or TSV payloads.
//!
//! `serde_json::Value` objects keep sorted keys, so serializing the same
//! data twice is byte-identical; nothing time- or environment-dependent
//! enters the payload.

use serde_json::{json, Map, Value};

use qfano::enumerate::{FanoCandidate, StatusRow, SurveyRow};
use qfano::link::{CaseReport, LinkSolution};
use qfano::rational::{format_rational, Rational};

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

/// Wraps a payload with tool identity and the invoked command line.
pub fn envelope(command: &str, payload: Value) -> Value {
    json!({
        "tool": "qfano",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "payload": payload,
    })
}

pub fn rational_str(value: &Rational) -> Value {
    Value::String(format_rational(value))
}

fn indices_str(indices: &[u32]) -> String {
    let parts: Vec<String> = indices.iter().map(u32::to_string).collect();
    parts.join(",")
}

/// Basket as `{"points": [{"r": 10, "a": 3}, ...]}`, `a` omitted on
/// index-only entries.
pub fn basket_json(basket: &qfano::Basket) -> Value {
    let points: Vec<Value> = basket
        .points()
        .iter()
        .map(|p| match p.weight() {
            Some(a) => json!({ "r": p.index(), "a": a }),
            None => json!({ "r": p.index() }),
        })
        .collect();
    json!({ "points": points })
}

pub fn candidate_json(no: usize, c: &FanoCandidate) -> Value {
    let decorations: Vec<Value> =
        c.decorations().iter().map(|b| Value::String(b.to_string())).collect();
    json!({
        "no": no,
        "indices": c.indices(),
        "basket": c.decorations()[0].to_string(),
        "basket_points": basket_json(&c.decorations()[0]),
        "decorations": decorations,
        "a3": rational_str(&c.degree_a3()),
        "genus": c.genus(),
        "dims": c.dims(),
        "status": c.status().as_str(),
        "ref": c.status_note().unwrap_or(""),
    })
}

pub fn candidates_payload(q: u32, candidates: &[FanoCandidate], unmatched: &[StatusRow]) -> Value {
    let rows: Vec<Value> =
        candidates.iter().enumerate().map(|(i, c)| candidate_json(i + 1, c)).collect();
    let unmatched: Vec<Value> = unmatched
        .iter()
        .map(|r| {
            json!({
                "no": r.no,
                "indices": r.indices,
                "a3": rational_str(&r.a3),
                "status": r.status.as_str(),
            })
        })
        .collect();
    json!({
        "index": q,
        "count": candidates.len(),
        "candidates": rows,
        "unmatched_status_rows": unmatched,
    })
}

/// Flat TSV for the candidate table; same fields as the JSON rows.
pub fn candidates_tsv(candidates: &[FanoCandidate]) -> String {
    let mut out = String::from("no\tindices\tbasket\tdecorations\ta3\tgenus\tdims\tstatus\tref\n");
    for (i, c) in candidates.iter().enumerate() {
        let decorations: Vec<String> = c.decorations().iter().map(|b| b.to_string()).collect();
        let dims: Vec<String> = c.dims().iter().map(i64::to_string).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            i + 1,
            indices_str(&c.indices()),
            c.decorations()[0],
            decorations.join(";"),
            format_rational(&c.degree_a3()),
            c.genus(),
            dims.join(","),
            c.status().as_str(),
            c.status_note().unwrap_or(""),
        ));
    }
    out
}

pub fn dims_payload(q: u32, basket: &qfano::Basket, a3: &Rational, dims: &[(u32, i64)]) -> Value {
    let rows: Vec<Value> = dims.iter().map(|(k, d)| json!({ "k": k, "dim": d })).collect();
    json!({
        "index": q,
        "basket": basket.to_string(),
        "basket_points": basket_json(basket),
        "a3": rational_str(a3),
        "dims": rows,
    })
}

pub fn dims_tsv(dims: &[(u32, i64)]) -> String {
    let mut out = String::from("k\tdim\n");
    for (k, d) in dims {
        out.push_str(&format!("{k}\t{d}\n"));
    }
    out
}

pub fn solution_json(sol: &LinkSolution) -> Value {
    let entries: Vec<Value> =
        sol.entries.iter().map(|t| json!({ "k": t.k, "s": t.s, "m": t.m })).collect();
    json!({
        "branch": if sol.fiber { "fiber" } else { "birational" },
        "q_hat": sol.q_hat,
        "e": sol.e,
        "entries": entries,
    })
}

pub fn case_report_payload(source_no: usize, report: &CaseReport) -> Value {
    let scenario = &report.scenario;
    let center = match scenario.center() {
        qfano::link::BlowupCenter::QuotientPoint { r, alpha } => json!({
            "kind": "quotient-point",
            "r": r,
            "alpha": format_rational(&alpha),
        }),
        qfano::link::BlowupCenter::GorensteinLocus { alpha } => json!({
            "kind": "gorenstein-locus",
            "alpha": alpha.to_string(),
        }),
    };
    let mut scenario_obj = Map::new();
    scenario_obj.insert("case".into(), json!(source_no));
    scenario_obj.insert("index".into(), json!(scenario.index()));
    scenario_obj.insert("center".into(), center);
    scenario_obj.insert("k0".into(), json!(scenario.anchor_k0()));
    scenario_obj.insert("mobile_ks".into(), json!(scenario.mobile_ks()));
    scenario_obj.insert("threshold_m".into(), json!(scenario.threshold_m()));

    let raw: Vec<Value> = report.raw_solutions.iter().map(solution_json).collect();
    let eliminations: Vec<Value> = report
        .eliminations
        .iter()
        .map(|e| {
            json!({
                "solution": solution_json(&e.solution),
                "filter": e.filter,
                "detail": e.detail,
            })
        })
        .collect();
    let survivors: Vec<Value> = report
        .survivors
        .iter()
        .map(|s| json!({ "solution": solution_json(&s.solution), "note": s.note }))
        .collect();
    json!({
        "scenario": Value::Object(scenario_obj),
        "raw_solutions": raw,
        "eliminations": eliminations,
        "survivors": survivors,
        "notes": report.notes,
    })
}

pub fn survey_payload(threshold: i64, rows: &[SurveyRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "q": r.q,
                "candidates": r.candidates,
                "high_dim": r.high_dim,
                "min_genus": r.min_genus,
            })
        })
        .collect();
    json!({ "threshold": threshold, "rows": rows })
}

/// Renders the envelope: JSON is compact on one line; TSV payloads pass
/// through with the envelope as a comment header.
pub fn render(format: Format, command: &str, payload: Value, tsv: Option<String>) -> String {
    match format {
        Format::Json => {
            let doc = envelope(command, payload);
            let mut text = serde_json::to_string(&doc).expect("serializable");
            text.push('\n');
            text
        }
        Format::Tsv => {
            let tsv = tsv.expect("tsv rendering for this payload");
            format!("# qfano {} {}\n{}", env!("CARGO_PKG_VERSION"), command, tsv)
        }
    }
}
