//! CSV tables and the run manifest written next to them.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

/// One CSV cell. Reals are written in scientific notation with 15
/// significant digits; a missing value is an empty field.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Missing,
}

impl Cell {
    fn render(&self, out: &mut String) {
        match self {
            Cell::Int(v) => write!(out, "{v}").unwrap(),
            Cell::Real(v) => write!(out, "{v:.14e}").unwrap(),
            Cell::Missing => {}
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &'static [&'static str]) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.render(&mut out);
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub parameters: serde_json::Value,
    /// `None` for analytic-only runs.
    pub seed: Option<u64>,
    pub version: &'static str,
    pub wall_clock_seconds: f64,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes the table to `out` with its manifest alongside, or to stdout with
/// the manifest on stderr.
pub fn emit(table: &Table, manifest: &RunManifest, out: Option<&Path>) -> io::Result<()> {
    let json = serde_json::to_string_pretty(manifest).map_err(io::Error::other)?;
    match out {
        Some(path) => {
            fs::write(path, table.to_csv())?;
            fs::write(manifest_path(path), json + "\n")
        }
        None => {
            io::stdout().lock().write_all(table.to_csv().as_bytes())?;
            writeln!(io::stderr().lock(), "{json}")
        }
    }
}
