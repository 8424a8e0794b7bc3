//! Line-oriented reports.
//!
//! The records form starts with a fixed schema header, holds one
//! `kind key=value ...` line per record and ends with a `status` line. It
//! carries no timings, so identical runs give identical bytes. The text form
//! adds wall times.

use std::fmt::Write as _;
use std::time::Duration;

pub const SCHEMA_HEADER: &str = "# rigcat-report v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Records,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: impl Into<String>) -> Self {
        Self { kind: kind.into(), fields: Vec::new() }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }
}

fn escape(value: &str) -> String {
    let plain = !value.is_empty() && value.chars().all(|c| !c.is_whitespace() && c != '"' && c != '\\' && c != '=');
    if plain {
        value.to_owned()
    } else {
        serde_json::to_string(value).expect("strings serialize")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub records: Vec<Record>,
    /// Labeled wall times, shown only in the text form.
    pub timings: Vec<(String, Duration)>,
    /// Free-form lines, shown only in the text form.
    pub notes: Vec<String>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), passed: true, ..Self::default() }
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    /// Records a check; a failing check fails the whole report.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.passed &= ok;
        let mut record =
            Record::new("check").field("name", name.into()).field("result", if ok { "pass" } else { "fail" });
        let detail = detail.into();
        if !detail.is_empty() {
            record = record.field("detail", detail);
        }
        self.records.push(record);
    }

    pub fn time(&mut self, label: impl Into<String>, elapsed: Duration) {
        self.timings.push((label.into(), elapsed));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Records => self.render_records(),
            Format::Text => self.render_text(),
        }
    }

    pub fn render_records(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{SCHEMA_HEADER}").unwrap();
        writeln!(out, "command {}", escape(&self.command)).unwrap();
        for r in &self.records {
            out.push_str(&r.kind);
            for (k, v) in &r.fields {
                write!(out, " {k}={}", escape(v)).unwrap();
            }
            out.push('\n');
        }
        writeln!(out, "status {}", if self.passed { "pass" } else { "fail" }).unwrap();
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "rigcat {}", self.command).unwrap();
        for r in &self.records {
            if r.kind == "check" {
                let get = |key: &str| r.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).unwrap_or("");
                let mark = if get("result") == "pass" { "PASS" } else { "FAIL" };
                write!(out, "  [{mark}] {}", get("name")).unwrap();
                let detail = get("detail");
                if !detail.is_empty() {
                    write!(out, ": {detail}").unwrap();
                }
                out.push('\n');
            } else {
                let fields: Vec<String> = r.fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(out, "  {}: {}", r.kind, fields.join(", ")).unwrap();
            }
        }
        for note in &self.notes {
            writeln!(out, "  {note}").unwrap();
        }
        for (label, elapsed) in &self.timings {
            writeln!(out, "  time {label}: {:.3}s", elapsed.as_secs_f64()).unwrap();
        }
        writeln!(out, "{}", if self.passed { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_are_escaped_and_stable() {
        let mut r = Report::new("demo");
        r.push(Record::new("hom").field("source", "x+ y-").field("count", 3));
        r.check("laws", false, "");
        r.time("total", Duration::from_millis(5));
        r.notes.push("note".into());
        let text = r.render_records();
        assert_eq!(
            text,
            "# rigcat-report v1\ncommand demo\nhom source=\"x+ y-\" count=3\ncheck name=laws result=fail\nstatus fail\n"
        );
        assert!(r.render_text().contains("[FAIL] laws"));
        assert!(r.render_text().contains("time total"));
    }
}
