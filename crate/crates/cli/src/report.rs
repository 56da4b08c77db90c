//! Machine-readable run reports: one record per check with a stable id, an
//! anchor naming the fact being checked, a pass/fail/skipped status and an
//! optional witness payload. Reports are deterministic for a fixed seed
//! except for the elapsed-time field.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn tag(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckRecord {
    pub fn new(
        id: impl Into<String>,
        anchor: &str,
        ok: bool,
        witness: Option<String>,
    ) -> CheckRecord {
        CheckRecord {
            id: id.into(),
            anchor: anchor.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: witness.map(Value::String),
        }
    }

    /// A record carrying a structured payload (emitted objects, coordinate
    /// lists) instead of a plain message.
    pub fn with_payload(id: impl Into<String>, anchor: &str, ok: bool, payload: Value) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: Some(payload),
        }
    }

    pub fn skipped(id: impl Into<String>, anchor: &str, reason: &str) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.to_string(),
            status: Status::Skipped,
            witness: Some(Value::String(reason.to_string())),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(suite: impl Into<String>, seed: u64) -> Report {
        Report {
            suite: suite.into(),
            seed,
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn exit_code(&self) -> u8 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let line = match &c.witness {
                Some(Value::String(s)) => {
                    format!("[{:^7}] {}  -- {}\n", c.status.tag(), c.id, s)
                }
                Some(v) => format!("[{:^7}] {}  -- {}\n", c.status.tag(), c.id, v),
                None => format!("[{:^7}] {}\n", c.status.tag(), c.id),
            };
            out.push_str(&line);
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        out.push_str(&format!(
            "{} checks, {} failed, {} ms\n",
            self.checks.len(),
            failed,
            self.elapsed_ms
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_is_stable() {
        let mut r = Report::new("demo", 3);
        r.push(CheckRecord::new("only", "demo.anchor", true, None));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["suite"], "demo");
        assert_eq!(v["seed"], 3);
        assert_eq!(v["checks"][0]["id"], "only");
        assert_eq!(v["checks"][0]["status"], "pass");
        assert!(v["checks"][0].get("witness").is_none());
    }

    #[test]
    fn text_lists_every_check() {
        let mut r = Report::new("demo", 0);
        r.push(CheckRecord::new("only", "demo.anchor", true, None));
        r.push(CheckRecord::new(
            "broken",
            "demo.anchor",
            false,
            Some("saw 2, wanted 3".into()),
        ));
        let text = r.to_text();
        assert!(text.contains("[ pass  ] only"));
        assert!(text.contains("[ fail  ] broken  -- saw 2, wanted 3"));
        assert!(text.contains("2 checks, 1 failed"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn payload_witnesses_serialize_inline() {
        let mut r = Report::new("demo", 0);
        r.push(CheckRecord::with_payload(
            "emitted",
            "demo.payload",
            true,
            serde_json::json!({ "rows": [["1", "0"]] }),
        ));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][0]["witness"]["rows"][0][1], "0");
        assert_eq!(r.exit_code(), 0);
    }
}
