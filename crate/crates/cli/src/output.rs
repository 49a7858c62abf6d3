use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A flat report; keys print in sorted order so output is byte-stable.
pub type Report = Map<String, Value>;

fn scalar(v: &Value, sep: &str) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(items) => items.iter().map(|i| scalar(i, sep)).collect::<Vec<_>>().join(sep),
        other => other.to_string(),
    }
}

fn csv_field(s: String) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report is plain data");
            s.push('\n');
            s
        }
        Format::Csv => {
            let header: Vec<String> = report.keys().map(|k| csv_field(k.clone())).collect();
            let row: Vec<String> = report.values().map(|v| csv_field(scalar(v, ";"))).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
        Format::Text => report.iter().map(|(k, v)| format!("{k}: {}\n", scalar(v, " "))).collect(),
    }
}
