//! Data assets: the index-7 status table and the model registry.
//!
//! Both ship embedded in the binary; setting `FANO_DATA_DIR` to a directory
//! containing `q7_status.json` or `models.json` overrides them.

use std::fs;
use std::path::PathBuf;

use serde_json::Value;

use qfano::enumerate::{ExistenceStatus, StatusRow};
use qfano::rational::{parse_rational, Rational};
use qfano::wps::WeightedHypersurface;

pub const STATUS_ASSET: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/q7_status.json"));
pub const MODELS_ASSET: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/models.json"));

#[derive(Debug)]
pub struct AssetError(pub String);

impl std::fmt::Display for AssetError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "asset error: {}", self.0)
    }
}

impl std::error::Error for AssetError {}

fn err(msg: impl Into<String>) -> AssetError {
    AssetError(msg.into())
}

fn load_text(file_name: &str, embedded: &'static str) -> Result<String, AssetError> {
    if let Ok(dir) = std::env::var("FANO_DATA_DIR") {
        let path: PathBuf = [dir.as_str(), file_name].iter().collect();
        return fs::read_to_string(&path)
            .map_err(|e| err(format!("cannot read {}: {e}", path.display())));
    }
    Ok(embedded.to_string())
}

fn as_u32(value: &Value, what: &str) -> Result<u32, AssetError> {
    value.as_u64().and_then(|v| u32::try_from(v).ok()).ok_or_else(|| err(format!("bad {what}")))
}

fn as_rational(value: &Value, what: &str) -> Result<Rational, AssetError> {
    let s = value.as_str().ok_or_else(|| err(format!("{what} must be a p/q string")))?;
    parse_rational(s).map_err(|e| err(format!("{what}: {e}")))
}

fn as_u32_list(value: &Value, what: &str) -> Result<Vec<u32>, AssetError> {
    value
        .as_array()
        .ok_or_else(|| err(format!("{what} must be a list")))?
        .iter()
        .map(|v| as_u32(v, what))
        .collect()
}

/// Parses the status table.
pub fn load_status_rows() -> Result<Vec<StatusRow>, AssetError> {
    let text = load_text("q7_status.json", STATUS_ASSET)?;
    let root: Value =
        serde_json::from_str(&text).map_err(|e| err(format!("q7_status.json: {e}")))?;
    let rows = root["rows"].as_array().ok_or_else(|| err("q7_status.json: missing rows"))?;
    rows.iter()
        .map(|row| {
            Ok(StatusRow {
                no: as_u32(&row["no"], "row no")?,
                indices: as_u32_list(&row["indices"], "row indices")?,
                a3: as_rational(&row["a3"], "row a3")?,
                genus: row["genus"].as_i64().ok_or_else(|| err("bad row genus"))?,
                status: ExistenceStatus::parse(
                    row["status"].as_str().ok_or_else(|| err("bad row status"))?,
                )
                .ok_or_else(|| err("unknown status value"))?,
                reference: row["ref"].as_str().unwrap_or_default().to_string(),
            })
        })
        .collect()
}

/// One model registry entry with its expectations.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub name: String,
    pub role: String,
    pub hypersurface: WeightedHypersurface,
    pub annotations: Vec<String>,
    pub expected: Value,
}

/// Parses the model registry.
pub fn load_models() -> Result<Vec<ModelSpec>, AssetError> {
    let text = load_text("models.json", MODELS_ASSET)?;
    let root: Value = serde_json::from_str(&text).map_err(|e| err(format!("models.json: {e}")))?;
    let models = root["models"].as_array().ok_or_else(|| err("models.json: missing models"))?;
    models
        .iter()
        .map(|m| {
            let weights = as_u32_list(&m["weights"], "model weights")?;
            let degree = as_u32(&m["degree"], "model degree")?;
            let hypersurface = match m.get("monomials").filter(|v| !v.is_null()) {
                Some(list) => {
                    let monomials = list
                        .as_array()
                        .ok_or_else(|| err("model monomials must be a list"))?
                        .iter()
                        .map(|mono| as_u32_list(mono, "monomial"))
                        .collect::<Result<Vec<_>, _>>()?;
                    WeightedHypersurface::with_monomials(&weights, degree, monomials)
                }
                None if degree == 0 => WeightedHypersurface::ambient(&weights),
                None => WeightedHypersurface::hypersurface(&weights, degree),
            }
            .map_err(|e| err(format!("model {}: {e}", m["name"])))?;
            Ok(ModelSpec {
                name: m["name"].as_str().unwrap_or_default().to_string(),
                role: m["role"].as_str().unwrap_or_default().to_string(),
                hypersurface,
                annotations: m["annotations"]
                    .as_array()
                    .map(|a| a.iter().filter_map(|v| v.as_str().map(str::to_string)).collect())
                    .unwrap_or_default(),
                expected: m["expected"].clone(),
            })
        })
        .collect()
}
