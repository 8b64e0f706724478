//! Replayable run records.

use std::fs;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::commands::{to_json, CliError, Outcome};

#[derive(Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    /// Arguments after the program name.
    pub inputs: Vec<String>,
    pub outputs: Json,
    pub exit_code: u8,
    pub engine_version: String,
    pub wall_time_ms: f64,
}

pub fn write(path: &Path, args: &[String], outcome: &Outcome, elapsed: Duration) -> Result<(), CliError> {
    let command = outcome.json.get("command").and_then(Json::as_str).unwrap_or("scan").to_string();
    let record = RunRecord {
        command,
        inputs: args.to_vec(),
        outputs: outcome.json.clone(),
        exit_code: outcome.code,
        engine_version: maximin::ENGINE_VERSION.to_string(),
        wall_time_ms: elapsed.as_secs_f64() * 1e3,
    };
    fs::write(path, to_json(&record)? + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Re-executes the recorded inputs; exit 0 when outputs and exit code match.
pub fn replay(path: &Path, json: bool) -> Result<u8, CliError> {
    let raw = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let record: RunRecord = serde_json::from_str(&raw)?;
    let outcome = crate::execute_args(&record.inputs)?;
    let matches = outcome.json == record.outputs && outcome.code == record.exit_code;
    if json {
        let doc = serde_json::json!({
            "command": "replay",
            "record": record.command,
            "reproduced": matches,
        });
        println!("{}", to_json(&doc)?);
    } else if matches {
        println!("reproduced: {} ({})", record.command, record.inputs.join(" "));
    } else {
        println!("MISMATCH: {} ({})", record.command, record.inputs.join(" "));
    }
    Ok(if matches { 0 } else { 1 })
}
