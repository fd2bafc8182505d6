//! Run reports: one record per check, rendered as human-readable text or
//! byte-deterministic JSON.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::criteria::ResidueCertificate;
use crate::tables::{ModularPolyEntry, ValidationReport};
use crate::theta::IdentityCheck;

/// One named check with its pass flag and a key/value bag of exact decimal
/// strings (integers verbatim, balls as midpoint and radius).
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    pub values: BTreeMap<String, String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        CheckRecord {
            name: name.into(),
            pass,
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<String>) -> Self {
        self.values.insert(key.to_string(), value.into());
        self
    }
}

/// Full report for one CLI invocation. Wall time is kept out of the JSON
/// encoding so that identical inputs produce byte-identical reports.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub records: Vec<CheckRecord>,
    pub verdict: String,
    #[serde(skip)]
    pub wall_time_ms: u128,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            inputs: BTreeMap::new(),
            records: Vec::new(),
            verdict: "pass".to_string(),
            wall_time_ms: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<String>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    /// Marks the whole run as errored (usage/domain problem rather than a
    /// mathematical failure).
    pub fn set_error(&mut self, message: impl Into<String>) {
        self.verdict = "error".to_string();
        self.records
            .push(CheckRecord::new("error", false).with("message", message.into()));
    }

    /// Recomputes the verdict from the records (unless already errored).
    pub fn finalize(&mut self) {
        if self.verdict == "error" {
            return;
        }
        self.verdict = if self.records.iter().all(|r| r.pass) {
            "pass".to_string()
        } else {
            "fail".to_string()
        };
    }

    pub fn all_pass(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("theta-cert {}\n", self.command));
        for (k, v) in &self.inputs {
            out.push_str(&format!("  input {k} = {v}\n"));
        }
        for r in &self.records {
            let status = if r.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{status}] {}", r.name));
            if !r.values.is_empty() {
                let kv: Vec<String> =
                    r.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!(" ({})", kv.join(", ")));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "verdict: {} ({} checks, {} ms)\n",
            self.verdict,
            self.records.len(),
            self.wall_time_ms
        ));
        out
    }
}

/// Converts a residual enclosure check into a record.
pub fn record_from_identity(c: &IdentityCheck) -> CheckRecord {
    CheckRecord::new(&c.name, c.pass())
        .with("residual_mid_re", c.residual.re.mid.to_decimal(25))
        .with("residual_mid_im", c.residual.im.mid.to_decimal(25))
        .with("residual_radius", c.residual.radius_upper().to_decimal(4))
        .with("tolerance", c.tolerance.to_decimal(4))
        .with("contains_zero", if c.contains_zero { "true" } else { "false" })
}

/// Converts a residue certificate into a record.
pub fn record_from_certificate(cert: &ResidueCertificate) -> CheckRecord {
    CheckRecord::new(
        format!("certificate_{}_{}", cert.target.as_str(), cert.n),
        true,
    )
    .with("y0", cert.y0.to_string())
    .with("p", cert.p.to_string())
    .with("residue", cert.residue.to_string())
    .with("backend", cert.backend)
    .with("lemma", format!("{:?}", cert.lemma))
    .with("degree_dropped", if cert.degree_dropped { "true" } else { "false" })
}

/// Converts the table validation report into records.
pub fn records_from_validation(report: &ValidationReport) -> Vec<CheckRecord> {
    report
        .checks
        .iter()
        .map(|c| CheckRecord::new(&c.name, c.pass).with("detail", c.detail.clone()))
        .collect()
}

/// Summarizes one table entry (for `tables --list` and `--load`).
pub fn record_from_entry(entry: &ModularPolyEntry) -> CheckRecord {
    CheckRecord::new(
        format!("{}_{}", entry.family.as_str(), entry.n),
        true,
    )
    .with("family", entry.family.as_str())
    .with("n", entry.n.to_string())
    .with("deg_x", entry.poly.deg_x().to_string())
    .with("deg_y", entry.poly.deg_y().to_string())
    .with("terms", entry.poly.num_terms().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_records() {
        let mut r = RunReport::new("test");
        r.push(CheckRecord::new("a", true));
        r.finalize();
        assert_eq!(r.verdict, "pass");
        r.push(CheckRecord::new("b", false));
        r.finalize();
        assert_eq!(r.verdict, "fail");
    }

    #[test]
    fn json_is_deterministic_and_skips_wall_time() {
        let mut r = RunReport::new("test");
        r.input("n", "6");
        r.push(CheckRecord::new("a", true).with("k", "v").with("b", "2"));
        r.finalize();
        r.wall_time_ms = 123;
        let j1 = r.to_json();
        r.wall_time_ms = 456;
        let j2 = r.to_json();
        assert_eq!(j1, j2);
        assert!(!j1.contains("wall_time"));
        // BTreeMap keys serialize in sorted order
        assert!(j1.find("\"b\"").unwrap() < j1.find("\"k\"").unwrap());
    }

    #[test]
    fn error_verdict_sticks() {
        let mut r = RunReport::new("test");
        r.set_error("boom");
        r.finalize();
        assert_eq!(r.verdict, "error");
        assert!(r.to_text().contains("[FAIL] error"));
    }
}
