//! End-to-end tests of the `qfano` binary: output determinism, format
//! parity, exit codes and the data-directory override.

use std::process::{Command, Output};

use serde_json::Value;

fn qfano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfano"))
        .args(args)
        .env_remove("FANO_DATA_DIR")
        .output()
        .expect("binary runs")
}

fn payload(output: &Output) -> Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let doc: Value = serde_json::from_slice(&output.stdout).expect("valid JSON");
    assert_eq!(doc["tool"], "qfano");
    doc["payload"].clone()
}

#[test]
fn enumerate_index7_has_23_rows() {
    let out = qfano(&["enumerate", "--index", "7"]);
    let payload = payload(&out);
    assert_eq!(payload["count"], 23);
    assert_eq!(payload["candidates"].as_array().unwrap().len(), 23);
    assert_eq!(payload["unmatched_status_rows"].as_array().unwrap().len(), 0);
    // row 12 carries its merged status
    let row = &payload["candidates"][11];
    assert_eq!(row["indices"], serde_json::json!([2, 3, 3, 4]));
    assert_eq!(row["status"], "exists-and-classified");
}

#[test]
fn enumerate_index8_has_10_rows() {
    let out = qfano(&["enumerate", "--index", "8"]);
    assert_eq!(payload(&out)["count"], 10);
}

#[test]
fn enumerate_index20_is_empty_with_success() {
    let out = qfano(&["enumerate", "--index", "20"]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["count"], 0);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["enumerate", "--index", "7"],
        vec!["enumerate", "--index", "7", "--format", "tsv"],
        vec!["links", "--case", "11", "--center", "r=10"],
        vec!["verify-models"],
    ] {
        let a = qfano(&args);
        let b = qfano(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

/// The TSV and JSON payloads carry the same table.
#[test]
fn tsv_and_json_agree() {
    let json = payload(&qfano(&["enumerate", "--index", "7"]));
    let tsv_out = qfano(&["enumerate", "--index", "7", "--format", "tsv"]);
    let tsv = String::from_utf8(tsv_out.stdout).unwrap();
    let mut lines = tsv.lines();
    let comment = lines.next().unwrap();
    assert!(comment.starts_with("# qfano"));
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    assert_eq!(
        header,
        ["no", "indices", "basket", "decorations", "a3", "genus", "dims", "status", "ref"]
    );

    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    let json_rows = json["candidates"].as_array().unwrap();
    assert_eq!(rows.len(), json_rows.len());
    for (tsv_row, json_row) in rows.iter().zip(json_rows) {
        assert_eq!(tsv_row[0], json_row["no"].to_string());
        let indices: Vec<String> =
            json_row["indices"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
        assert_eq!(tsv_row[1], indices.join(","));
        assert_eq!(tsv_row[2], json_row["basket"].as_str().unwrap());
        let decorations: Vec<String> = json_row["decorations"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect();
        assert_eq!(tsv_row[3], decorations.join(";"));
        assert_eq!(tsv_row[4], json_row["a3"].as_str().unwrap());
        assert_eq!(tsv_row[5], json_row["genus"].to_string());
        let dims: Vec<String> =
            json_row["dims"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
        assert_eq!(tsv_row[6], dims.join(","));
        assert_eq!(tsv_row[7], json_row["status"].as_str().unwrap());
        assert_eq!(tsv_row[8], json_row["ref"].as_str().unwrap());
    }
}

#[test]
fn basket_points_schema() {
    let out = qfano(&["dims", "--index", "7", "--basket", "2,2,5:2,10:3", "--a3", "1/10"]);
    let doc = payload(&out);
    // stated weights appear, bare entries omit "a"
    assert_eq!(
        doc["basket_points"],
        serde_json::json!({ "points": [{"r": 2}, {"r": 2}, {"r": 5, "a": 2}, {"r": 10, "a": 3}] })
    );
    // enumerated candidates carry fully decorated points
    let out = qfano(&["enumerate", "--index", "7"]);
    let row = &payload(&out)["candidates"][0];
    assert_eq!(
        row["basket_points"],
        serde_json::json!({ "points": [{"r": 3, "a": 1}, {"r": 9, "a": 4}] })
    );
}

#[test]
fn dims_published_rows() {
    // case (2,3^2,4)
    let out = qfano(&[
        "dims",
        "--index",
        "7",
        "--basket",
        "2,3:1,3:1,4:1",
        "--a3",
        "1/12",
        "--max-k",
        "7",
    ]);
    let dims: Vec<i64> = payload(&out)["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["dim"].as_i64().unwrap())
        .collect();
    assert_eq!(dims, vec![0, 0, 1, 3, 5, 7, 11, 15]); // k = 0..=7

    // case (2^2,5,10) with its decorated basket
    let out = qfano(&[
        "dims",
        "--index",
        "7",
        "--basket",
        "2^2,5:2,10:3",
        "--a3",
        "1/10",
        "--max-k",
        "7",
    ]);
    let dims: Vec<i64> = payload(&out)["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["dim"].as_i64().unwrap())
        .collect();
    assert_eq!(dims, vec![0, 0, 1, 2, 5, 8, 12, 17]);
}

#[test]
fn links_case_11_index10_survivors() {
    let out = qfano(&["links", "--case", "11", "--center", "r=10"]);
    let payload = payload(&out);
    let survivors: Vec<(String, u64, u64)> = payload["survivors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            (
                s["solution"]["branch"].as_str().unwrap().to_string(),
                s["solution"]["q_hat"].as_u64().unwrap(),
                s["solution"]["e"].as_u64().unwrap(),
            )
        })
        .collect();
    assert!(survivors.contains(&("fiber".into(), 2, 1)));
    assert!(survivors.contains(&("birational".into(), 9, 1)));
    assert!(survivors.contains(&("birational".into(), 11, 2)));
    assert_eq!(survivors.len(), 3);
}

#[test]
fn links_case_12_index4_unique_then_eliminated() {
    let out = qfano(&["links", "--case", "12", "--center", "r=4"]);
    let payload = payload(&out);
    assert_eq!(payload["survivors"].as_array().unwrap().len(), 0);
    let dim_kills: Vec<&Value> = payload["eliminations"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["filter"] == "dimension")
        .collect();
    assert_eq!(dim_kills.len(), 1);
    assert_eq!(dim_kills[0]["solution"]["q_hat"], 5);
}

#[test]
fn links_case_10_gorenstein_overflows() {
    let out = qfano(&["links", "--case", "10", "--center", "gorenstein:1"]);
    let payload = payload(&out);
    assert_eq!(payload["raw_solutions"].as_array().unwrap().len(), 0);
    assert_eq!(payload["survivors"].as_array().unwrap().len(), 0);
    assert!(payload["notes"][0].as_str().unwrap().contains("overflows"));
}

#[test]
fn links_rejects_center_not_in_basket() {
    let out = qfano(&["links", "--case", "10", "--center", "r=10"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("no index-10 point"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qfano(&["enumerate"]).status.code(), Some(2));
    assert_eq!(qfano(&["enumerate", "--index", "x"]).status.code(), Some(2));
    assert_eq!(
        qfano(&["dims", "--index", "7", "--basket", "4:2", "--a3", "1/2"]).status.code(),
        Some(2)
    );
    assert_eq!(qfano(&["links", "--case", "99", "--center", "r=2"]).status.code(), Some(2));
    assert_eq!(qfano(&["links", "--case", "11", "--center", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_models_passes_on_shipped_registry() {
    let out = qfano(&["verify-models"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(payload(&out)["pass"], true);
}

#[test]
fn verify_models_fails_on_tampered_registry() {
    let dir = tempfile::tempdir().unwrap();
    // tamper: claim the wrong degree for the first classified model
    let tampered = qfano_cli::assets::MODELS_ASSET.replace("\"a3\": \"1/6\"", "\"a3\": \"1/5\"");
    assert_ne!(tampered, qfano_cli::assets::MODELS_ASSET);
    std::fs::write(dir.path().join("models.json"), tampered).unwrap();
    std::fs::write(dir.path().join("q7_status.json"), qfano_cli::assets::STATUS_ASSET).unwrap();

    let out = Command::new(env!("CARGO_BIN_EXE_qfano"))
        .args(["verify-models"])
        .env("FANO_DATA_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["payload"]["pass"], false);
    // the failing model carries a field-level diff
    let failing = doc["payload"]["models"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["pass"] == false)
        .expect("a failing model");
    let bad_check = failing["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["ok"] == false)
        .expect("a failing check");
    assert_ne!(bad_check["expected"], bad_check["actual"]);
}

#[test]
fn data_dir_override_applies_to_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let swapped = qfano_cli::assets::STATUS_ASSET
        .replace("\"ref\": \"Prokhorov 2007\"", "\"ref\": \"local note\"");
    std::fs::write(dir.path().join("q7_status.json"), swapped).unwrap();
    std::fs::write(dir.path().join("models.json"), qfano_cli::assets::MODELS_ASSET).unwrap();

    let out = Command::new(env!("CARGO_BIN_EXE_qfano"))
        .args(["enumerate", "--index", "7"])
        .env("FANO_DATA_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["payload"]["candidates"][0]["ref"], "local note");
}

#[test]
fn survey_reports_minima() {
    let out = qfano(&["survey", "--from", "3", "--to", "5", "--threshold", "3"]);
    let payload = payload(&out);
    let rows = payload["rows"].as_array().unwrap();
    assert_eq!(rows[0]["q"], 3);
    assert_eq!(rows[0]["min_genus"], 21);
    assert_eq!(rows[1]["min_genus"], 33);
    assert_eq!(rows[2]["high_dim"], 0);
}
