//! Versioned JSON reports.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const SCHEMA: &str = "lpa-report/1";

/// Digest of everything that determines a report: the canonical graph text
/// and the command inputs.
pub fn inputs_digest(graph_text: &str, inputs: &Value) -> String {
    let mut h = Sha256::new();
    h.update(graph_text.as_bytes());
    h.update([0u8]);
    h.update(inputs.to_string().as_bytes());
    format!("sha256:{:x}", h.finalize())
}

pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub digest: String,
    pub result: Value,
    pub diagnostics: Vec<String>,
    pub error: Option<CliError>,
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("inputs_digest".into(), json!(self.digest));
        m.insert("result".into(), self.result.clone());
        m.insert("diagnostics".into(), json!(self.diagnostics));
        let err = self.error.as_ref().map(|e| {
            let mut o = Map::new();
            o.insert("kind".into(), json!(e.kind()));
            o.insert("message".into(), json!(e.to_string()));
            if let CliError::Syntax { flag, line, column, .. } = e {
                o.insert("flag".into(), json!(flag));
                o.insert("line".into(), json!(line));
                o.insert("column".into(), json!(column));
            }
            Value::Object(o)
        });
        m.insert("error".into(), err.unwrap_or(Value::Null));
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), json!(t));
        }
        Value::Object(m)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }
}
