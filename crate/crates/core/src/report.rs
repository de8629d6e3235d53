//! Machine-readable run reports.
//!
//! A [`Report`] is serialized through `serde_json::Value`, whose maps keep
//! keys sorted, so two runs on the same inputs print byte-identical JSON once
//! timings are suppressed. The plain-text output is a rendering of the same
//! record.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Reported for information; never affects the exit status.
    Info,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        let digest = Sha256::digest(bytes);
        let sha256 = digest.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        Self {
            path: path.to_string(),
            sha256,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub verdict: Verdict,
    /// One-line human summary.
    pub summary: String,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub checks: Vec<CheckRecord>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    timing: bool,
}

impl Report {
    pub fn new(command: &str, timing: bool) -> Self {
        Self {
            tool: "trifol",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            inputs: Vec::new(),
            checks: Vec::new(),
            status: Status::Pass,
            error: None,
            timing,
        }
    }

    /// Runs `f` and records its verdict, summary and details.
    pub fn check<T: Serialize>(
        &mut self,
        name: &str,
        f: impl FnOnce() -> (Verdict, String, T),
    ) -> Verdict {
        let start = Instant::now();
        let (verdict, summary, details) = f();
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        self.push(name, verdict, summary, details, Some(elapsed));
        verdict
    }

    pub fn push<T: Serialize>(&mut self, name: &str, verdict: Verdict, summary: String, details: T, ms: Option<f64>) {
        if verdict == Verdict::Fail && self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self.checks.push(CheckRecord {
            name: name.to_string(),
            verdict,
            summary,
            details: serde_json::to_value(details).expect("report details serialize"),
            timing_ms: if self.timing { ms.map(|x| (x * 1e3).round() / 1e3) } else { None },
        });
    }

    /// Marks the run as an input or usage error.
    pub fn fail_with_error(&mut self, message: impl Into<String>) {
        self.status = Status::Error;
        self.error = Some(message.into());
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = serde_json::to_string_pretty(&value).expect("value prints");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.tool, self.version, self.command);
        for input in &self.inputs {
            let _ = writeln!(out, "  input {} sha256:{}", input.path, input.sha256);
        }
        for c in &self.checks {
            let tag = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Info => "INFO",
            };
            let _ = write!(out, "[{tag}] {}: {}", c.name, c.summary);
            if let Some(ms) = c.timing_ms {
                let _ = write!(out, " ({ms:.1} ms)");
            }
            out.push('\n');
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        };
        let _ = writeln!(out, "status: {status}");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_timing_can_be_dropped() {
        let mut r = Report::new("check", false);
        r.inputs.push(InputDigest::new("a.tri", b"abc"));
        r.check("zeta", || (Verdict::Pass, "ok".into(), serde_json::json!({"b": 1, "a": 2})));
        let json = r.to_json();
        assert!(json.find("\"checks\"").unwrap() < json.find("\"command\"").unwrap());
        assert!(json.find("\"a\"").unwrap() < json.find("\"b\"").unwrap());
        assert!(!json.contains("timing_ms"));
        assert!(json.contains("ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"));
        assert_eq!(r.status.exit_code(), 0);
    }

    #[test]
    fn failures_set_the_status() {
        let mut r = Report::new("check", true);
        r.check("x", || (Verdict::Info, String::new(), ()));
        assert_eq!(r.status, Status::Pass);
        r.check("y", || (Verdict::Fail, String::new(), ()));
        assert_eq!(r.status.exit_code(), 1);
        assert!(r.to_json().contains("timing_ms"));
        r.fail_with_error("boom");
        assert_eq!(r.status.exit_code(), 2);
        assert!(r.to_text().contains("error: boom"));
    }
}
