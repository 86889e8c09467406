//! Command reports: a plain text layout that parses back, and a JSON form.

use std::fmt::Write;

use anyhow::{bail, Result};
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Text(String),
    List(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub status: String,
    /// Whether the verification succeeded; decides the exit code.
    pub ok: bool,
    pub fields: Vec<(String, Field)>,
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, status: impl Into<String>, ok: bool) -> Self {
        Report {
            command: command.into(),
            status: status.into(),
            ok,
            fields: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn text(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), Field::Text(value.to_string())));
        self
    }

    pub fn list<I, S>(mut self, key: &str, items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.fields
            .push((key.to_string(), Field::List(items.into_iter().map(|s| s.to_string()).collect())));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "status: {}", self.status).unwrap();
        writeln!(out, "ok: {}", self.ok).unwrap();
        for (k, v) in &self.fields {
            match v {
                Field::Text(s) => writeln!(out, "{k}: {s}").unwrap(),
                Field::List(items) => {
                    writeln!(out, "{k}:").unwrap();
                    for item in items {
                        writeln!(out, "  - {item}").unwrap();
                    }
                }
            }
        }
        if let Some(t) = self.timing_ms {
            writeln!(out, "timing_ms: {t}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Report> {
        let mut lines = text.lines().peekable();
        let mut header = |key: &str| -> Result<String> {
            let line = lines.next().unwrap_or_default();
            match line.strip_prefix(key).and_then(|r| r.strip_prefix(": ")) {
                Some(v) => Ok(v.to_string()),
                None => bail!("expected `{key}: ...`, found `{line}`"),
            }
        };
        let command = header("command")?;
        let status = header("status")?;
        let ok = match header("ok")?.as_str() {
            "true" => true,
            "false" => false,
            other => bail!("invalid ok flag `{other}`"),
        };
        let mut report = Report::new(command, status, ok);
        while let Some(line) = lines.next() {
            if let Some(key) = line.strip_suffix(':').filter(|k| !k.contains(": ")) {
                let mut items = Vec::new();
                while let Some(item) = lines.peek().and_then(|l| l.strip_prefix("  - ")) {
                    items.push(item.to_string());
                    lines.next();
                }
                report.fields.push((key.to_string(), Field::List(items)));
            } else if let Some((key, value)) = line.split_once(": ") {
                if key == "timing_ms" {
                    report.timing_ms = Some(value.parse()?);
                } else {
                    report.fields.push((key.to_string(), Field::Text(value.to_string())));
                }
            } else {
                bail!("malformed report line `{line}`");
            }
        }
        Ok(report)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("status".into(), Value::String(self.status.clone()));
        m.insert("ok".into(), Value::Bool(self.ok));
        let mut payload = Map::new();
        for (k, v) in &self.fields {
            let v = match v {
                Field::Text(s) => Value::String(s.clone()),
                Field::List(items) => Value::Array(items.iter().cloned().map(Value::String).collect()),
            };
            payload.insert(k.clone(), v);
        }
        m.insert("payload".into(), Value::Object(payload));
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), Value::from(t));
        }
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let r = Report::new("quantize --N 4", "unique", true)
            .text("charge", 5)
            .list("admissible", ["w[1,1]"])
            .list("empty", Vec::<String>::new())
            .text("note", "a: b");
        assert_eq!(Report::from_text(&r.to_text()).unwrap(), r);
        let mut timed = r.clone();
        timed.timing_ms = Some(12);
        assert_eq!(Report::from_text(&timed.to_text()).unwrap(), timed);
    }

    #[test]
    fn json_keeps_field_order() {
        let r = Report::new("x", "pass", true).text("b", 1).text("a", 2);
        let s = serde_json::to_string(&r.to_json()).unwrap();
        assert!(s.find("\"b\"").unwrap() < s.find("\"a\"").unwrap());
        assert!(s.starts_with("{\"command\""));
    }
}
