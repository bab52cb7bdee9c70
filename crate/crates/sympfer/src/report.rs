//! Structured check reports with JSON and text renderings.

use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};

/// One verified statement. `lhs`/`rhs` carry the exact values that were
/// compared (rendered as text) when the check is an equality; otherwise
/// they describe the certified object.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub inputs: serde_json::Value,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

impl CheckRecord {
    pub fn new(
        check: &str,
        inputs: serde_json::Value,
        holds: bool,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        CheckRecord {
            check: check.to_string(),
            inputs,
            holds,
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub timestamp: String,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    /// Free-form attachments (fusion tables, coefficient dumps).
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub payload: serde_json::Value,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Report {
        Report {
            command: command.to_string(),
            config: config.clone(),
            timestamp: timestamp(),
            checks: Vec::new(),
            pass: true,
            payload: serde_json::Value::Null,
        }
    }

    pub fn push(&mut self, rec: CheckRecord) {
        self.pass &= rec.holds;
        self.checks.push(rec);
    }

    pub fn merge(&mut self, other: Report) {
        self.pass &= other.pass;
        self.checks.extend(other.checks);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self).unwrap(),
            OutputFormat::Text => {
                let mut out = format!("# {}\n", self.command);
                for c in &self.checks {
                    out.push_str(&format!(
                        "[{}] {} :: {} | lhs={} rhs={}\n",
                        if c.holds { "pass" } else { "FAIL" },
                        c.check,
                        c.inputs,
                        c.lhs,
                        c.rhs
                    ));
                }
                out.push_str(&format!(
                    "result: {}\n",
                    if self.pass { "pass" } else { "FAIL" }
                ));
                out
            }
        }
    }
}

fn timestamp() -> String {
    use std::time::{SystemTime, UNIX_EPOCH};
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("{secs}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_pass_tracking_and_render() {
        let cfg = RunConfig::default();
        let mut r = Report::new("demo", &cfg);
        r.push(CheckRecord::new("a", serde_json::json!({}), true, "1", "1"));
        assert!(r.pass);
        r.push(CheckRecord::new("b", serde_json::json!({"d": 1}), false, "0", "1"));
        assert!(!r.pass);
        let json = r.render(OutputFormat::Json);
        assert!(json.contains("\"holds\": false"));
        let text = r.render(OutputFormat::Text);
        assert!(text.contains("[FAIL] b"));
        assert!(text.ends_with("result: FAIL\n"));
    }
}
