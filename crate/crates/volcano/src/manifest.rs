use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;

/// Bumped whenever a JSON field or a table column changes.
pub const SCHEMA_VERSION: u32 = 1;

/// Provenance block embedded in every emitted file.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
    pub command: Vec<String>,
    pub input: Option<String>,
    pub config: serde_json::Value,
    pub timestamp: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: Vec<String>, input: Option<String>, config: &impl Serialize) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema_version: SCHEMA_VERSION,
            command,
            input,
            config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
            timestamp: timestamp(),
            outputs: Vec::new(),
        }
    }

    pub fn with_output(mut self, path: Option<&std::path::Path>) -> Self {
        if let Some(p) = path {
            self.outputs.push(p.display().to_string());
        }
        self
    }
}

/// RFC 3339 UTC time, pinned by `SOURCE_DATE_EPOCH` when set.
pub fn timestamp() -> String {
    let at = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .map(|secs| UNIX_EPOCH + Duration::from_secs(secs))
        .unwrap_or_else(SystemTime::now);
    humantime::format_rfc3339_seconds(at).to_string()
}
