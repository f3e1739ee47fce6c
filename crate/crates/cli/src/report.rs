use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    StoredPaperValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub check_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub provenance: Provenance,
}

impl Check {
    pub fn new(check_id: &str, lhs: impl ToString, rhs: impl ToString, pass: bool) -> Self {
        Check {
            check_id: check_id.to_string(),
            params: BTreeMap::new(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
            provenance: Provenance::Computed,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn stored(mut self, stored: bool) -> Self {
        if stored {
            self.provenance = Provenance::StoredPaperValue;
        }
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped_cyclic: u64,
    pub unsupported: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

/// Integers come first and compare numerically; anything else compares as
/// text.
fn cmp_value(a: &str, b: &str) -> Ordering {
    match (a.parse::<i128>(), b.parse::<i128>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

fn cmp_checks(a: &Check, b: &Check) -> Ordering {
    a.check_id.cmp(&b.check_id).then_with(|| {
        let mut xs = a.params.iter();
        let mut ys = b.params.iter();
        loop {
            match (xs.next(), ys.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ka, va)), Some((kb, vb))) => {
                    let o = ka.cmp(kb).then_with(|| cmp_value(va, vb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    })
}

impl VerificationReport {
    pub fn new(suite: &str, mut checks: Vec<Check>, skipped_cyclic: u64, unsupported: u64) -> Self {
        checks.sort_by(cmp_checks);
        let passed = checks.iter().filter(|c| c.pass).count() as u64;
        let failed = checks.len() as u64 - passed;
        VerificationReport {
            suite: suite.to_string(),
            summary: Summary {
                total: passed + failed + skipped_cyclic + unsupported,
                passed,
                failed,
                skipped_cyclic,
                unsupported,
            },
            checks,
        }
    }

    /// Reports merged in the given order, check ids prefixed by suite.
    pub fn merge(suite: &str, parts: Vec<VerificationReport>) -> Self {
        let mut checks = Vec::new();
        let (mut skipped, mut unsupported) = (0, 0);
        for part in parts {
            skipped += part.summary.skipped_cyclic;
            unsupported += part.summary.unsupported;
            checks.extend(part.checks.into_iter().map(|mut c| {
                c.check_id = format!("{}/{}", part.suite, c.check_id);
                c
            }));
        }
        VerificationReport::new(suite, checks, skipped, unsupported)
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let rows: Vec<[String; 6]> = self
            .checks
            .iter()
            .map(|c| {
                let params: Vec<String> =
                    c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                [
                    c.check_id.clone(),
                    params.join(" "),
                    abbreviate(&c.lhs),
                    abbreviate(&c.rhs),
                    if c.pass { "PASS" } else { "FAIL" }.to_string(),
                    match c.provenance {
                        Provenance::Computed => String::new(),
                        Provenance::StoredPaperValue => "stored".to_string(),
                    },
                ]
            })
            .collect();
        let mut widths = [0usize; 6];
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for row in &rows {
            let mut line = String::new();
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                if i == 2 || i == 3 {
                    let _ = write!(line, "{cell:>width$}", width = widths[i]);
                } else {
                    let _ = write!(line, "{cell:<width$}", width = widths[i]);
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{}: total {} passed {} failed {} skipped_cyclic {} unsupported {}",
            self.suite, s.total, s.passed, s.failed, s.skipped_cyclic, s.unsupported
        );
        out
    }
}

fn abbreviate(n: &str) -> String {
    const KEEP: usize = 12;
    if n.len() <= 3 * KEEP {
        n.to_string()
    } else {
        format!(
            "{}...{} ({} digits)",
            &n[..KEEP],
            &n[n.len() - KEEP..],
            n.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_json() {
        let r = VerificationReport::new("oracle", Vec::new(), 0, 0);
        let compact = serde_json::to_string(&r).unwrap();
        assert_eq!(
            compact,
            r#"{"suite":"oracle","checks":[],"summary":{"total":0,"passed":0,"failed":0,"skipped_cyclic":0,"unsupported":0}}"#
        );
    }

    #[test]
    fn ordering_is_numeric() {
        let checks = vec![
            Check::new("star", 1, 1, true).param("l", 10),
            Check::new("star", 1, 1, true).param("l", 9),
            Check::new("coverage", 1, 1, false).param("n", 5),
        ];
        let r = VerificationReport::new("symspin", checks, 2, 1);
        let ls: Vec<&str> = r
            .checks
            .iter()
            .map(|c| c.params.values().next().unwrap().as_str())
            .collect();
        assert_eq!(ls, ["5", "9", "10"]);
        assert_eq!(r.summary.total, 6);
        assert_eq!(r.summary.failed, 1);
        assert!(!r.all_passed());
    }

    #[test]
    fn text_rows() {
        let r = VerificationReport::new(
            "symspin",
            vec![Check::new("star", 4, 3, true).param("l", 8)],
            0,
            0,
        );
        let text = r.to_text();
        assert!(text.lines().next().unwrap().starts_with("star  l=8"));
        assert!(text.contains("PASS"));
        assert_eq!(
            abbreviate(&"7".repeat(50)),
            format!("{}...{} (50 digits)", "7".repeat(12), "7".repeat(12))
        );
    }

    #[test]
    fn json_round_trip() {
        let r = VerificationReport::new(
            "crosschar",
            vec![Check::new("star", "123456789012345678901234567890", 5, true).stored(true)],
            1,
            0,
        );
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"stored_paper_value\""));
    }
}
