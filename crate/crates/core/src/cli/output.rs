use std::io::Write;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rows of string cells under a fixed header. JSON renders one row as an
/// object and several as an array; CSV always writes the header.
#[derive(Debug, Clone, Default)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    single: bool,
}

struct Row<'a>(&'a [String], &'a [String]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            single: false,
        }
    }

    /// A table holding exactly one record.
    pub fn record(cells: Vec<(String, String)>) -> Self {
        let (columns, row): (Vec<_>, Vec<_>) = cells.into_iter().unzip();
        Table {
            columns,
            rows: vec![row],
            single: true,
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, out: &mut Vec<u8>) -> Result<()> {
        let io = |e: std::io::Error| Error::usage(format!("cannot write output: {e}"));
        match format {
            Format::Json => {
                let rows: Vec<Row> = self.rows.iter().map(|r| Row(&self.columns, r)).collect();
                let text = if self.single {
                    serde_json::to_string_pretty(&rows[0])
                } else {
                    serde_json::to_string_pretty(&rows)
                }
                .map_err(|e| Error::usage(format!("cannot encode output: {e}")))?;
                writeln!(out, "{text}").map_err(io)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                let csv_err = |e: csv::Error| Error::usage(format!("cannot write output: {e}"));
                w.write_record(&self.columns).map_err(csv_err)?;
                for row in &self.rows {
                    w.write_record(row).map_err(csv_err)?;
                }
                w.flush().map_err(io)?;
            }
        }
        Ok(())
    }
}
