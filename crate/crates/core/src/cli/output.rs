use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Status;

pub const SCHEMA_VERSION: &str = "1";

/// Exit codes shared by every subcommand.
pub mod exit {
    pub const OK: i32 = 0;
    pub const COUNTEREXAMPLE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const DOMAIN: i32 = 3;
}

/// One JSON document per invocation. Numeric payloads are exact strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: BTreeMap<String, String>) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            result: Value::Null,
            status: Status::Ok,
            detail: None,
            error: None,
            elapsed_ms: None,
        }
    }

    pub fn failed(mut self, status: Status, message: String) -> Self {
        self.status = status;
        self.error = Some(message);
        self.result = Value::Null;
        self
    }
}

/// `identity,params,lhs,rhs,status`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvRow {
    pub identity: String,
    pub params: String,
    pub lhs: String,
    pub rhs: String,
    pub status: String,
}

pub const CSV_HEADER: [&str; 5] = ["identity", "params", "lhs", "rhs", "status"];

pub fn write_csv(out: &mut dyn Write, rows: &[CsvRow]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([&r.identity, &r.params, &r.lhs, &r.rhs, &r.status])?;
    }
    w.flush()
}

pub fn write_json(out: &mut dyn Write, record: &OutputRecord) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(record).expect("records serialize");
    writeln!(out, "{text}")
}
