use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::CliError;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// CSV with a header row, even when there are no records.
pub fn csv_table<T: Serialize>(header: &[&str], rows: &[T]) -> Result<String, CliError> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    writer.write_record(header).map_err(CliError::io)?;
    for row in rows {
        writer.serialize(row).map_err(CliError::io)?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::io(e.into_error()))?;
    String::from_utf8(bytes).map_err(CliError::io)
}

/// A single JSON object tagged with the schema version and command name.
pub fn json_document(command: &str, body: Value) -> Result<String, CliError> {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), json!(command));
    match body {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("result".into(), other);
        }
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(doc)).map_err(CliError::io)?;
    text.push('\n');
    Ok(text)
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(CliError::io),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes()).map_err(CliError::io)?;
            lock.flush().map_err(CliError::io)
        }
    }
}
