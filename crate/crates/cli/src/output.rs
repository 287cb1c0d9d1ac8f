use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// Everything a run prints in JSON mode; `payload` alone is deterministic.
#[derive(Debug, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: Value,
    pub elapsed_ms: u128,
    pub payload: Value,
}

/// A rendered result: JSON payload plus its CSV and text renderings.
///
/// `failure` is reported after the output is written, so oracle and check
/// reports reach the user together with the nonzero exit.
pub struct Rendered {
    pub payload: Value,
    pub csv: Option<Vec<Vec<String>>>,
    pub text: Option<String>,
    pub failure: Option<CliError>,
}

pub fn csv_string(rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
