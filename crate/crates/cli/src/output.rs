use serde::Serialize;
use serde_json::{json, Value};
use stperiod_core::BigRational;

use crate::config::Format;

/// Version of every JSON document this crate writes.
pub const SCHEMA_VERSION: u32 = 1;

/// `{"num": "..", "den": ".."}` in lowest terms.
pub fn exact(x: &BigRational) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("core types serialize to JSON")
}

/// One command's result in all three renderings.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub command: &'static str,
    pub params: Value,
    pub result: Value,
    pub passed: bool,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub text: Vec<String>,
}

impl Artifact {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "params": self.params,
                    "passed": self.passed,
                    "result": self.result,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("JSON value");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header).expect("in-memory write");
                for row in &self.csv_rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 records")
            }
            Format::Text => {
                let mut s = self.text.join("\n");
                s.push('\n');
                s
            }
        }
    }
}

/// CSV row `index,num,den`.
pub fn rational_row(index: impl ToString, x: &BigRational) -> Vec<String> {
    vec![index.to_string(), x.numer().to_string(), x.denom().to_string()]
}
