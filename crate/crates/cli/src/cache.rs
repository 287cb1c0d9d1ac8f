//! On-disk cache of enumerations, keyed by the SHA-256 of the canonical request.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub fn key(request: &Value) -> String {
    let canonical = serde_json::to_string(request).expect("json value serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

fn entry(dir: &Path, request: &Value) -> PathBuf {
    dir.join(format!("{}.json", key(request)))
}

/// The cached value for `request`, computing and storing it on a miss.
///
/// A corrupt or mismatched entry is recomputed and overwritten.
pub fn cached(
    dir: Option<&Path>,
    request: &Value,
    compute: impl FnOnce() -> Result<Value, CliError>,
) -> Result<(Value, bool), CliError> {
    let Some(dir) = dir else {
        return Ok((compute()?, false));
    };
    let path = entry(dir, request);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(stored) = serde_json::from_str::<Value>(&text) {
            if stored.get("request") == Some(request) {
                if let Some(v) = stored.get("value") {
                    return Ok((v.clone(), true));
                }
            }
        }
    }
    let value = compute()?;
    fs::create_dir_all(dir)?;
    let stored = serde_json::json!({ "request": request, "value": value });
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string(&stored)?)?;
    fs::rename(&tmp, &path)?;
    Ok((value, false))
}
