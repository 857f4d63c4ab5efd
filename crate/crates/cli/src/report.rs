//! The report every command emits. The schema is documented in
//! `book/src/reports.md`.

use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use quasivar::quasivar::{Answer, Replay, Verdict};

use crate::input::Input;

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<Input>,
    /// Absent for commands that compute rather than decide.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<Replay>,
    pub result: Value,
    pub elapsed_ms: u128,
    /// Human-readable rendering of `result`; not part of the JSON form.
    #[serde(skip)]
    pub lines: Vec<String>,
    #[serde(skip)]
    pub exit: Option<i32>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            inputs: Vec::new(),
            verdict: None,
            replay: None,
            result: Value::Null,
            elapsed_ms: 0,
            lines: Vec::new(),
            exit: None,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn exit_code(&self) -> i32 {
        self.exit
            .or_else(|| self.verdict.as_ref().map(|v| v.answer.exit_code()))
            .unwrap_or(0)
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("plain data") + "\n";
        }
        let mut out = String::new();
        if let Some(v) = &self.verdict {
            let answer = match v.answer {
                Answer::Yes => "yes".to_string(),
                Answer::No => "no".to_string(),
                Answer::CertifiedUpTo(r) => format!("certified up to rank {r}"),
                Answer::Unknown(b) => format!("unknown (bound {b})"),
            };
            let _ = writeln!(out, "{}: {answer}", self.command);
            if let Some(w) = &v.witness {
                let _ = writeln!(out, "witness: {}", serde_json::to_string(w).expect("plain data"));
            }
            if let Some(r) = &self.replay {
                let r = match r {
                    Replay::Verified => "verified".to_string(),
                    Replay::NotApplicable => "nothing to replay".to_string(),
                    Replay::Failed(m) => format!("FAILED: {m}"),
                };
                let _ = writeln!(out, "replay: {r}");
            }
        }
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        out
    }
}
