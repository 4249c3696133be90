//! Machine-readable command output.

use serde::{Deserialize, Serialize};

use crate::verify::CheckOutcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "OK")]
    Ok,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub expected: String,
    pub got: String,
}

impl From<&CheckOutcome> for Failure {
    fn from(c: &CheckOutcome) -> Self {
        Failure {
            check: c.name.clone(),
            expected: c.expected.clone(),
            got: c.got.clone(),
        }
    }
}

/// Output of one CLI command. `status` is `OK` exactly when `failures` is
/// empty; [`Report::new`] keeps the two in step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[u32; 2]>,
    pub payload: serde_json::Value,
    pub status: Status,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(
        command: impl Into<String>,
        payload: serde_json::Value,
        failures: Vec<Failure>,
    ) -> Self {
        let status = if failures.is_empty() {
            Status::Ok
        } else {
            Status::Fail
        };
        Report {
            command: command.into(),
            genus: None,
            range: None,
            payload,
            status,
            failures,
        }
    }

    pub fn for_genus(mut self, g: u32) -> Self {
        self.genus = Some(g);
        self
    }

    pub fn for_range(mut self, from: u32, to: u32) -> Self {
        self.range = Some([from, to]);
        self
    }

    pub fn ok(&self) -> bool {
        self.status == Status::Ok
    }

    /// Pretty JSON. Object keys inside `payload` come out sorted.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn status_follows_failures() {
        let ok = Report::new("counts", json!({}), vec![]).for_genus(3);
        assert!(ok.ok());
        let bad = Report::new(
            "verify",
            json!([]),
            vec![Failure {
                check: "x".into(),
                expected: "1".into(),
                got: "2".into(),
            }],
        );
        assert_eq!(bad.status, Status::Fail);
    }

    #[test]
    fn byte_identical_round_trip() {
        let r = Report::new("pair", json!({"zeta": "1/2", "alpha": ["-3", "0"]}), vec![])
            .for_range(3, 22);
        let text = r.to_json();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
        assert!(text.find("alpha").unwrap() < text.find("zeta").unwrap());
    }
}
