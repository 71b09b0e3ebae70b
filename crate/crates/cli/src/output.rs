use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A command's result in both output shapes. `rows[0]` is the CSV header.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value, rows: Vec<Vec<String>>) -> Self {
        Report { json, rows }
    }

    fn render(&self, format: Format, meta: Option<Value>) -> io::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut json = self.json.clone();
                if let Some(meta) = meta {
                    json = match json {
                        Value::Object(mut map) => {
                            map.insert("meta".into(), meta);
                            Value::Object(map)
                        }
                        other => serde_json::json!({ "result": other, "meta": meta }),
                    };
                }
                let mut buf = serde_json::to_vec_pretty(&json)?;
                buf.push(b'\n');
                Ok(buf)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.rows {
                    w.write_record(row)?;
                }
                if let Some(Value::Object(meta)) = meta {
                    for (k, v) in meta {
                        w.write_record(["# meta", k.as_str(), v.to_string().as_str()])?;
                    }
                }
                w.into_inner().map_err(|e| e.into_error())
            }
        }
    }

    pub fn write(&self, format: Format, out: Option<&Path>, meta: Option<Value>) -> io::Result<()> {
        let bytes = self.render(format, meta)?;
        match out {
            Some(path) => std::fs::write(path, bytes),
            None => io::stdout().lock().write_all(&bytes),
        }
    }
}
