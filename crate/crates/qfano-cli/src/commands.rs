//! Command implementations shared by the binary and the test suites.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use qfano::basket::Basket;
use qfano::enumerate::{
    attach_status, enumerate_candidates, high_dim_survey, FanoCandidate, FilterConfig,
};
use qfano::link::{
    analyze_case, solve_main_equation, BlowupCenter, LinkScenario, SearchCaps, TargetTables,
};
use qfano::rational::{format_rational, parse_rational, Rational};
use qfano::rr::FanoNumerics;
use qfano::wps::{Membership, ModelCheck};

use crate::assets::{load_models, load_status_rows};
use crate::output;

/// A usage-level failure; rendered to stderr with exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

fn usage(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

impl From<qfano::enumerate::EnumError> for CliError {
    fn from(e: qfano::enumerate::EnumError) -> Self {
        usage(e.to_string())
    }
}

impl From<qfano::link::LinkError> for CliError {
    fn from(e: qfano::link::LinkError) -> Self {
        usage(e.to_string())
    }
}

impl From<qfano::rr::RrError> for CliError {
    fn from(e: qfano::rr::RrError) -> Self {
        usage(e.to_string())
    }
}

impl From<crate::assets::AssetError> for CliError {
    fn from(e: crate::assets::AssetError) -> Self {
        usage(e.to_string())
    }
}

/// Enumerates candidates for `q`, merging the status asset at `q = 7`.
pub fn enumerate_with_status(
    q: u32,
    cfg: &FilterConfig,
    with_status: bool,
) -> Result<(Vec<FanoCandidate>, Vec<qfano::enumerate::StatusRow>), CliError> {
    let mut candidates = enumerate_candidates(q, cfg);
    let mut unmatched = Vec::new();
    if with_status && q == 7 {
        let rows = load_status_rows()?;
        unmatched = attach_status(&mut candidates, &rows)?;
    }
    Ok((candidates, unmatched))
}

pub fn cmd_enumerate(
    q: u32,
    cfg: &FilterConfig,
    with_status: bool,
) -> Result<(Value, Option<String>), CliError> {
    let (candidates, unmatched) = enumerate_with_status(q, cfg, with_status)?;
    let payload = output::candidates_payload(q, &candidates, &unmatched);
    let tsv = output::candidates_tsv(&candidates);
    Ok((payload, Some(tsv)))
}

pub fn cmd_dims(
    q: u32,
    basket_text: &str,
    a3_text: &str,
    max_k: u32,
) -> Result<(Value, Option<String>), CliError> {
    let basket = Basket::from_str(basket_text).map_err(|e| usage(e.to_string()))?;
    let a3 = parse_rational(a3_text).map_err(|e| usage(e.to_string()))?;
    let numerics = FanoNumerics::new(q, basket.clone(), a3)?;
    let dims: Vec<(u32, i64)> = (0..=max_k)
        .map(|k| numerics.linear_system_dim(i64::from(k)).map(|d| (k, d)))
        .collect::<Result<_, _>>()?;
    let payload = output::dims_payload(q, &basket, &a3, &dims);
    let tsv = output::dims_tsv(&dims);
    Ok((payload, Some(tsv)))
}

/// Parses a center spec: `r=10` or `gorenstein:1`; `alpha` overrides the
/// discrepancy (only `2/3` over an index-3 point is admissible).
pub fn parse_center(spec: &str, alpha: Option<&str>) -> Result<BlowupCenter, CliError> {
    if let Some(r) = spec.strip_prefix("r=") {
        let r: u32 = r.parse().map_err(|_| usage(format!("bad center spec {spec:?}")))?;
        return match alpha {
            None => Ok(BlowupCenter::kawamata(r)?),
            Some(text) => {
                let alpha = parse_rational(text).map_err(|e| usage(e.to_string()))?;
                Ok(BlowupCenter::quotient_with_alpha(r, alpha)?)
            }
        };
    }
    if let Some(a) = spec.strip_prefix("gorenstein:") {
        if alpha.is_some() {
            return Err(usage("--alpha applies to quotient-point centers only"));
        }
        let a: u32 = a.parse().map_err(|_| usage(format!("bad center spec {spec:?}")))?;
        return Ok(BlowupCenter::gorenstein(a)?);
    }
    Err(usage(format!("bad center spec {spec:?}: expected r=<index> or gorenstein:<alpha>")))
}

/// Scenario presets mirroring the source case analyses; other cases anchor
/// on the first movable system and carry k = 1..=3.
fn preset(case_no: usize, source: &FanoCandidate) -> Result<(u32, Vec<u32>, bool), CliError> {
    Ok(match case_no {
        10 => (2, vec![1, 2], false),
        11 => (3, vec![1, 2, 3], false),
        12 => (3, vec![1, 3], true),
        _ => {
            let k0 = source
                .dims()
                .iter()
                .position(|&d| d >= 1)
                .map(|i| i as u32 + 1)
                .ok_or_else(|| usage("source has no movable |kA|; pass --k0 explicitly"))?;
            let ks: Vec<u32> = (1..=3.min(source.index())).collect();
            (k0, ks, false)
        }
    })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_links(
    case_no: usize,
    center_spec: &str,
    alpha: Option<&str>,
    k0: Option<u32>,
    ks: Option<Vec<u32>>,
    not_canonical: Option<bool>,
    caps: SearchCaps,
    cfg: &FilterConfig,
) -> Result<(Value, Option<String>), CliError> {
    let (candidates, _) = enumerate_with_status(7, cfg, true)?;
    let source = candidates.get(case_no.wrapping_sub(1)).ok_or_else(|| {
        usage(format!("no case {case_no}: the table has {} rows", candidates.len()))
    })?;
    let center = parse_center(center_spec, alpha)?;
    let (k0_default, ks_default, nc_default) = preset(case_no, source)?;
    let scenario = LinkScenario::new(
        source,
        center,
        k0.unwrap_or(k0_default),
        &ks.unwrap_or(ks_default),
        not_canonical.unwrap_or(nc_default),
    )?;

    // build dimension tables for every target index the raw grid names
    let raw = solve_main_equation(&scenario, &caps);
    let needed: BTreeSet<u32> =
        raw.iter().filter(|s| !s.fiber && s.q_hat >= 2).map(|s| s.q_hat).collect();
    let needed: Vec<u32> = needed.into_iter().collect();
    let tables = TargetTables::build(&needed, cfg, caps.max_s.max(i64::from(caps.max_e)) as u32);

    let report = analyze_case(&scenario, &caps, &tables)?;
    Ok((output::case_report_payload(case_no, &report), None))
}

pub fn cmd_survey(
    q_lo: u32,
    q_hi: u32,
    threshold: i64,
    cfg: &FilterConfig,
) -> Result<(Value, Option<String>), CliError> {
    if q_lo < 3 || q_lo > q_hi {
        return Err(usage("survey range must satisfy 3 <= lo <= hi"));
    }
    let rows = high_dim_survey(q_lo, q_hi, threshold, cfg);
    Ok((output::survey_payload(threshold, &rows), None))
}

fn check(field: &str, expected: impl ToString, actual: impl ToString) -> (Value, bool) {
    let expected = expected.to_string();
    let actual = actual.to_string();
    let ok = expected == actual;
    (json!({ "field": field, "expected": expected, "actual": actual, "ok": ok }), ok)
}

fn model_check_values(mc: &ModelCheck) -> (String, String, String, String) {
    let opt_u32 = |v: &Option<u32>| v.map_or("none".to_string(), |x| x.to_string());
    let opt_rat = |v: &Option<Rational>| v.as_ref().map_or("none".to_string(), format_rational);
    (
        mc.index_expected.to_string(),
        opt_u32(&mc.index_actual),
        format_rational(&mc.degree_expected),
        opt_rat(&mc.degree_actual),
    )
}

/// Verifies every registry model; the boolean is the overall verdict.
pub fn cmd_verify_models(cfg: &FilterConfig) -> Result<(Value, bool), CliError> {
    let models = load_models()?;
    let (candidates, _) = enumerate_with_status(7, cfg, true)?;

    let mut reports = Vec::new();
    let mut all_ok = true;
    for model in &models {
        let mut checks: Vec<Value> = Vec::new();
        let mut ok = true;
        let mut push = |pair: (Value, bool), ok: &mut bool| {
            *ok &= pair.1;
            checks.push(pair.0);
        };

        match model.role.as_str() {
            "classified-threefold" => {
                let want_q = model.expected["q"].as_u64().unwrap_or(0) as u32;
                let want_a3 = model.expected["a3"].as_str().unwrap_or("0");
                let want_a3 = parse_rational(want_a3).map_err(|e| usage(e.to_string()))?;
                let want_case = model.expected["case"].as_u64().unwrap_or(0) as usize;

                let matched =
                    candidates.iter().position(|c| c.index() == want_q && c.degree_a3() == want_a3);
                match matched {
                    Some(pos) => {
                        let cand = &candidates[pos];
                        let mc = qfano::wps::verify_candidate(&model.hypersurface, cand);
                        let (ie, ia, de, da) = model_check_values(&mc);
                        push(check("fano_index", ie, ia), &mut ok);
                        push(check("degree_a3", de, da), &mut ok);
                        push(check("table_row", want_case, pos + 1), &mut ok);
                        let want_basket: Vec<u64> = model.expected["basket"]
                            .as_array()
                            .map(|a| a.iter().filter_map(Value::as_u64).collect())
                            .unwrap_or_default();
                        let got: Vec<u64> = cand.indices().iter().map(|&r| u64::from(r)).collect();
                        push(
                            check("basket_indices", format!("{want_basket:?}"), format!("{got:?}")),
                            &mut ok,
                        );
                    }
                    None => {
                        push(
                            check(
                                "candidate_match",
                                format!(
                                    "some row with (q, A^3) = ({want_q}, {})",
                                    format_rational(&want_a3)
                                ),
                                "no matching candidate",
                            ),
                            &mut ok,
                        );
                    }
                }
            }
            "threefold-normal-form" => {
                let want_q = model.expected["q"].as_u64().unwrap_or(0);
                let want_a3 = model.expected["a3"].as_str().unwrap_or("0");
                let got_q = model
                    .hypersurface
                    .fano_index()
                    .map(|v| v.to_string())
                    .unwrap_or_else(|_| "not Fano".into());
                let got_a3 = model
                    .hypersurface
                    .degree_a3()
                    .map(|v| format_rational(&v))
                    .unwrap_or_else(|e| e.to_string());
                push(check("fano_index", want_q, got_q), &mut ok);
                push(check("degree_a3", want_a3, got_a3), &mut ok);
                // the weight-4 coordinate point must lie on the model
                let want_on = model.expected["index4_point_on_model"].as_bool().unwrap_or(true);
                let coord = model
                    .hypersurface
                    .weights()
                    .iter()
                    .position(|&w| w == 4)
                    .ok_or_else(|| usage("normal form lacks a weight-4 coordinate"))?;
                let membership = model
                    .hypersurface
                    .stratum_membership(coord)
                    .map_err(|e| usage(e.to_string()))?;
                let got_on = matches!(membership, Membership::On);
                push(check("index4_point_on_model", want_on, got_on), &mut ok);
            }
            "surface-form" => {
                let want_k2 = model.expected["k_squared"].as_str().unwrap_or("0");
                let got_k2 = model
                    .hypersurface
                    .surface_k_squared()
                    .map(|v| format_rational(&v))
                    .unwrap_or_else(|e| e.to_string());
                push(check("k_squared", want_k2, got_k2), &mut ok);
                let coord = model.expected["section_coordinate"].as_u64().unwrap_or(0) as usize;
                let want_deg =
                    model.expected["section_anticanonical_degree"].as_str().unwrap_or("0");
                let got_deg = model
                    .hypersurface
                    .section_anticanonical_degree(coord)
                    .map(|v| format_rational(&v))
                    .unwrap_or_else(|e| e.to_string());
                push(check("section_anticanonical_degree", want_deg, got_deg), &mut ok);
            }
            other => {
                push(check("role", "a known model role", other), &mut ok);
            }
        }

        all_ok &= ok;
        reports.push(json!({
            "name": model.name,
            "role": model.role,
            "model": model.hypersurface.to_string(),
            "annotations": model.annotations,
            "checks": checks,
            "pass": ok,
        }));
    }

    Ok((json!({ "models": reports, "pass": all_ok }), all_ok))
}
