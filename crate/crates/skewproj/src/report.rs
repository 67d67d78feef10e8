//! Machine-readable command reports. Every command produces one `Report`;
//! `--json` serializes it (stable field order, sorted details), the
//! default rendering is a fixed plain-text layout. Commands with a
//! natural text block (quiver presentations, catalog listings) carry it
//! in `body`, printed verbatim after the header.

use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub details: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub body: Option<String>,
}

impl Report {
    pub fn new(command: &str, inputs: &[String]) -> Self {
        Report {
            command: command.to_string(),
            inputs: inputs.to_vec(),
            verdict: String::new(),
            witness: None,
            details: BTreeMap::new(),
            body: None,
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if !self.inputs.is_empty() {
            out.push_str(&format!("inputs: {}\n", self.inputs.join(", ")));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if let Some(w) = &self.witness {
            out.push_str(&format!(
                "witness: {}\n",
                serde_json::to_string(w).expect("witness serialization")
            ));
        }
        for (key, value) in &self.details {
            out.push_str(&format!("{key}: {}\n", render_value(value)));
        }
        if let Some(body) = &self.body {
            out.push_str(body);
            if !body.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

fn render_value(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("detail serialization"),
    }
}
