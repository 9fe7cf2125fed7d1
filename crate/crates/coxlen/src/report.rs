//! Output envelope and the three output formats.

use coxlen_core::{CoxeterSystem, GroupSpec};
use serde::Serialize;
use serde_json::Value;

use crate::input::MatrixJson;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// Counters reported with every result.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Stats {
    pub elapsed_ms: f64,
    pub subsets_tested: u64,
    pub orbit_states: u64,
    pub cache_hits: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupInfo {
    pub spec: String,
    pub rank: usize,
    pub matrix: Vec<Vec<u32>>,
}

impl GroupInfo {
    pub fn new(spec: &GroupSpec, sys: &CoxeterSystem) -> Self {
        GroupInfo { spec: spec.to_string(), rank: sys.rank(), matrix: MatrixJson::of(sys).matrix }
    }
}

/// The stable JSON shape shared by every command.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub command: String,
    pub group: Option<GroupInfo>,
    pub input: Value,
    pub result: Value,
    pub stats: Stats,
}

/// A command result that can be printed in every format.
pub trait Report: Serialize {
    fn plain(&self) -> String;

    /// Header and rows. The default is one row of the top-level fields, with
    /// nested values written as JSON.
    fn csv(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let value = serde_json::to_value(self).expect("report serializes");
        let Value::Object(map) = value else {
            return (vec!["value".into()], vec![vec![scalar(&value)]]);
        };
        let header = map.keys().cloned().collect();
        let row = map.values().map(scalar).collect();
        (header, vec![row])
    }

    /// False when the command checked something and the check failed.
    fn passed(&self) -> bool {
        true
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Renders `report` wrapped in `envelope` fields, in the requested format.
pub fn render<R: Report>(format: Format, envelope: &Envelope, report: &R) -> String {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(envelope).expect("envelope serializes");
            text.push('\n');
            text
        }
        Format::Plain => {
            let mut text = report.plain();
            if !text.ends_with('\n') {
                text.push('\n');
            }
            text
        }
        Format::Csv => {
            let (header, rows) = report.csv();
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(&header).expect("in-memory write");
            for row in rows {
                writer.write_record(&row).expect("in-memory write");
            }
            String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
        }
    }
}
