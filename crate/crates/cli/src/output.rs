//! Artifact writing. Every artifact carries the command, its configuration
//! and the library version: CSV as leading `# key=value` lines, JSON as a
//! `{config, version, data}` wrapper.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Map, Value};

use cone_excursions::VERSION;

pub struct Header {
    config: Map<String, Value>,
    notes: Vec<(String, String)>,
}

impl Header {
    pub fn new<C: Serialize>(command: &str, config: &C) -> Result<Self> {
        let mut map = match serde_json::to_value(config)? {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        map.insert("command".into(), Value::String(command.into()));
        Ok(Header { config: map, notes: Vec::new() })
    }

    /// Extra `key=value` facts about the run (summary statistics, flags).
    pub fn note<T: Serialize>(&mut self, key: &str, value: T) -> Result<()> {
        let v = match serde_json::to_value(value)? {
            Value::String(s) => s,
            other => other.to_string(),
        };
        self.notes.push((key.to_owned(), v));
        Ok(())
    }

    fn comment_lines(&self) -> String {
        let mut out = format!("# version={VERSION}\n");
        for (k, v) in &self.config {
            let v = match v {
                Value::String(s) => s.clone(),
                Value::Null => "none".into(),
                other => other.to_string(),
            };
            out.push_str(&format!("# {k}={v}\n"));
        }
        for (k, v) in &self.notes {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out
    }

    pub fn csv<T: Serialize>(&self, rows: &[T]) -> Result<Vec<u8>> {
        let mut buf = self.comment_lines().into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Ok(buf)
    }

    pub fn json<T: Serialize>(&self, data: &T) -> Result<Vec<u8>> {
        let mut doc = json!({
            "config": self.config,
            "version": VERSION,
            "data": data,
        });
        if !self.notes.is_empty() {
            let notes: Map<String, Value> = self.notes.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
            doc["notes"] = Value::Object(notes);
        }
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s.into_bytes())
    }
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}
