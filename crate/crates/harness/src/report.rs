//! Verification reports: one entry per measured (family, quantity, m, n).

use std::fmt::Write;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Truncated,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
            Status::Truncated => "TRUNCATED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub family: String,
    pub quantity: String,
    pub dialects: Vec<String>,
    pub m: Option<usize>,
    pub n: usize,
    pub expected: Option<u64>,
    pub measured: Option<u64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub truncated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub tool: String,
    pub version: String,
    pub summary: Summary,
    pub entries: Vec<Entry>,
}

impl ComplexityReport {
    pub fn new(entries: Vec<Entry>) -> Self {
        let count = |s: Status| entries.iter().filter(|e| e.status == s).count();
        let summary = Summary {
            total: entries.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            skipped: count(Status::Skipped),
            truncated: count(Status::Truncated),
        };
        ComplexityReport {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            summary,
            entries,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }

    pub fn to_table(&self) -> String {
        let header = ["family", "quantity", "dialects", "m", "n", "expected", "measured", "status"];
        let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        let rows: Vec<[String; 8]> = self
            .entries
            .iter()
            .map(|e| {
                let status = match &e.note {
                    Some(note) => format!("{} ({note})", e.status.label()),
                    None => e.status.label().to_string(),
                };
                [
                    e.family.clone(),
                    e.quantity.clone(),
                    e.dialects.join(" "),
                    e.m.map_or("-".to_string(), |m| m.to_string()),
                    e.n.to_string(),
                    opt(e.expected),
                    opt(e.measured),
                    status,
                ]
            })
            .collect();
        let mut width = header.map(str::len);
        for row in &rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(width)
                .enumerate()
                .map(|(i, (c, w))| {
                    if i + 1 == cells.len() {
                        c.to_string()
                    } else {
                        format!("{c:<w$}")
                    }
                })
                .collect();
            writeln!(out, "{}", padded.join("  ")).unwrap();
        };
        line(&mut out, header.to_vec());
        for row in &rows {
            line(&mut out, row.iter().map(String::as_str).collect());
        }
        let s = &self.summary;
        writeln!(
            out,
            "\n{} entries: {} pass, {} fail, {} skipped, {} truncated",
            s.total, s.pass, s.fail, s.skipped, s.truncated
        )
        .unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(status: Status) -> Entry {
        Entry {
            family: "left-ideal".into(),
            quantity: "star".into(),
            dialects: vec!["(a,-,-,-,e)".into()],
            m: None,
            n: 4,
            expected: Some(5),
            measured: Some(5),
            status,
            note: None,
        }
    }

    #[test]
    fn summary_counts() {
        let r = ComplexityReport::new(vec![entry(Status::Pass), entry(Status::Fail), entry(Status::Skipped)]);
        assert_eq!(r.summary.total, 3);
        assert_eq!((r.summary.pass, r.summary.fail, r.summary.skipped), (1, 1, 1));
        assert!(r.has_failures());
    }

    #[test]
    fn table_and_json() {
        let r = ComplexityReport::new(vec![entry(Status::Pass)]);
        let table = r.to_table();
        assert!(table.lines().nth(1).unwrap().starts_with("left-ideal  star"));
        assert!(table.contains("1 entries: 1 pass"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["entries"][0]["status"], "PASS");
        assert_eq!(json["entries"][0]["m"], serde_json::Value::Null);
    }
}
