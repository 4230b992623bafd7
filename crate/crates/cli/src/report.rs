//! Reports and their serializations.

use std::fmt::Write as _;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const TOOL: &str = "gcgeom";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const REPORT_SCHEMA: &str = "gcgeom-report/1";

#[derive(Serialize, Deserialize, JsonSchema, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    #[must_use]
    pub fn exit_code(self) -> u8 {
        match self {
            Self::Pass => 0,
            Self::Fail => 1,
            Self::Error => 2,
        }
    }
}

#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq, Eq)]
pub struct ErrorDoc {
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
}

/// Result of one job.
#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub schema: String,
    pub command: String,
    pub seed: u64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDoc>,
    pub timing_ms: u64,
}

/// Mathematical outcome of a command.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass(Value),
    Fail(Value),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl Report {
    #[must_use]
    pub fn new(
        command: &str,
        seed: u64,
        result: Result<Outcome, CliError>,
        timing_ms: u64,
    ) -> Self {
        let (verdict, certificate, counterexample, error) = match result {
            Ok(Outcome::Pass(v)) => (Verdict::Pass, Some(v), None, None),
            Ok(Outcome::Fail(v)) => (Verdict::Fail, None, Some(v), None),
            Err(e) => (
                Verdict::Error,
                None,
                None,
                Some(ErrorDoc {
                    message: e.to_string(),
                    location: e.location(),
                }),
            ),
        };
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            schema: REPORT_SCHEMA.into(),
            command: command.into(),
            seed,
            verdict,
            certificate,
            counterexample,
            error,
            timing_ms,
        }
    }

    #[must_use]
    pub fn exit_code(&self) -> u8 {
        self.verdict.exit_code()
    }

    /// Serialized report; JSON output ends with a newline.
    #[must_use]
    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Error => "ERROR",
        };
        let _ = writeln!(
            out,
            "{} {} {}: {} (seed {}, {} ms)",
            self.tool, self.version, self.command, verdict, self.seed, self.timing_ms
        );
        let body = self
            .certificate
            .as_ref()
            .map(|v| ("certificate", v))
            .or(self.counterexample.as_ref().map(|v| ("counterexample", v)));
        if let Some((label, Value::Object(map))) = body {
            let _ = writeln!(out, "{label}:");
            for (k, v) in map {
                let _ = writeln!(out, "  {k}: {}", summarize(v));
            }
        }
        if let Some(e) = &self.error {
            match &e.location {
                Some(loc) => {
                    let _ = writeln!(out, "error at {loc}: {}", e.message);
                }
                None => {
                    let _ = writeln!(out, "error: {}", e.message);
                }
            }
        }
        out
    }
}

fn summarize(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => {
            let s = other.to_string();
            if s.chars().count() > 160 {
                let cut: String = s.chars().take(157).collect();
                format!("{cut}...")
            } else {
                s
            }
        }
    }
}
