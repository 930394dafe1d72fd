use serde::Serialize;
use serde_json::{Map, Value};

/// Provenance block embedded in every JSON artifact.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Map<String, Value>,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, params: Map<String, Value>, seed: Option<u64>) -> Self {
        RunManifest {
            command: command.to_string(),
            params,
            seed,
            version: env!("CARGO_PKG_VERSION"),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    /// `{"manifest": ..., "result": ...}`.
    pub fn wrap(&self, result: Value) -> Value {
        serde_json::json!({ "manifest": self, "result": result })
    }
}
