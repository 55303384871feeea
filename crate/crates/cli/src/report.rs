use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Result of one command: a JSON document and, where it has one, a flat table.
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    /// Additional files written next to the main output, as `(suffix, json)`.
    pub companions: Vec<(String, Value)>,
    pub exit_code: i32,
}

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn json(json: Value) -> Self {
        Self { json, table: None, companions: Vec::new(), exit_code: 0 }
    }

    pub fn with_table(mut self, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { headers, rows });
        self
    }

    pub fn failing_if(mut self, failed: bool) -> Self {
        if failed {
            self.exit_code = 1;
        }
        self
    }

    fn render(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Json => {
                let mut text = serde_json::to_string_pretty(&self.json).expect("serializable report");
                text.push('\n');
                Ok(text.into_bytes())
            }
            Format::Csv => {
                let table = self
                    .table
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("this command has no CSV form; use --format json".into()))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.headers).map_err(CliError::csv)?;
                for row in &table.rows {
                    w.write_record(row).map_err(CliError::csv)?;
                }
                w.into_inner().map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }

    /// Writes the report to `emit` (or `out`) and companions next to `emit`.
    pub fn write(&self, format: Option<Format>, emit: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
        let format = format.unwrap_or_else(|| match emit.and_then(|p| p.extension()) {
            Some(ext) if ext == "csv" => Format::Csv,
            _ => Format::Json,
        });
        let bytes = self.render(format)?;
        match emit {
            Some(path) => {
                std::fs::write(path, &bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                for (suffix, json) in &self.companions {
                    let side = companion_path(path, suffix);
                    let mut text = serde_json::to_string_pretty(json).expect("serializable report");
                    text.push('\n');
                    std::fs::write(&side, text).map_err(|e| CliError::Io(format!("{}: {e}", side.display())))?;
                    writeln!(out, "wrote {}", side.display()).map_err(CliError::io)?;
                }
                writeln!(out, "wrote {}", path.display()).map_err(CliError::io)?;
            }
            None => {
                out.write_all(&bytes).map_err(CliError::io)?;
                for (suffix, json) in &self.companions {
                    writeln!(out, "# {suffix}").map_err(CliError::io)?;
                    let text = serde_json::to_string_pretty(json).expect("serializable report");
                    writeln!(out, "{text}").map_err(CliError::io)?;
                }
            }
        }
        Ok(())
    }
}

/// `dims.csv` with suffix `singular` becomes `dims.singular.json`.
pub fn companion_path(path: &Path, suffix: &str) -> std::path::PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}.json"))
}
