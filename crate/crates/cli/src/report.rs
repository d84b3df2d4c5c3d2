//! Run reports, emitted either as aligned text or as JSON lines. Both forms
//! render the same records, so they always carry the same values.

use std::io::{self, Write};

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    JsonLines,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub kind: &'static str,
    /// Printed verbatim in text mode ahead of the fields.
    pub headline: Option<String>,
    pub fields: Map<String, Value>,
}

impl Record {
    pub fn new(kind: &'static str) -> Self {
        Self { kind, headline: None, fields: Map::new() }
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.to_owned(), value.into());
        self
    }

    pub fn headline(mut self, text: impl Into<String>) -> Self {
        self.headline = Some(text.into());
        self
    }

    fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("kind".into(), self.kind.into());
        if let Some(h) = &self.headline {
            obj.insert("headline".into(), h.clone().into());
        }
        obj.extend(self.fields.clone());
        Value::Object(obj)
    }

    fn to_text(&self) -> String {
        let fields: Vec<String> =
            self.fields.iter().map(|(k, v)| format!("{k}={}", text_value(v))).collect();
        match &self.headline {
            Some(h) if fields.is_empty() => h.clone(),
            Some(h) => format!("{h}  {}", fields.join(" ")),
            None => format!("{:<10} {}", self.kind, fields.join(" ")).trim_end().to_owned(),
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            if items.is_empty() {
                "none".into()
            } else {
                items.iter().map(text_value).collect::<Vec<_>>().join(",")
            }
        }
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    pub records: Vec<Record>,
    /// Set when a verification step (witness, oracle agreement) failed.
    pub verification_failed: bool,
}

impl RunReport {
    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn emit<W: Write>(&self, format: OutputFormat, out: &mut W) -> io::Result<()> {
        for r in &self.records {
            match format {
                OutputFormat::Text => writeln!(out, "{}", r.to_text())?,
                OutputFormat::JsonLines => writeln!(out, "{}", r.to_json())?,
            }
        }
        Ok(())
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mut buf = Vec::new();
        self.emit(format, &mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("records are UTF-8")
    }
}
