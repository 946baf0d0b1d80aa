use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Rows with named columns, rendered as CSV or as an aligned table.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.headers).chain(&self.rows) {
            let cells: Vec<String> = line.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn pretty(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}", w = *w)).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&mut out, &self.headers);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        line(&mut out, &rule);
        for row in &self.rows {
            line(&mut out, row);
        }
        out
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// Everything a subcommand produces.
#[derive(Debug, Default)]
pub struct Report {
    /// One JSON value per output line.
    pub lines: Vec<Value>,
    pub table: Table,
    /// Replaces `table` in the pretty format.
    pub display: Option<Table>,
    /// Trailing lines of the pretty format.
    pub notes: Vec<String>,
    /// A proven claim failed.
    pub violated: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut out = String::new();
                for v in &self.lines {
                    out.push_str(&serde_json::to_string(v).expect("json values serialize"));
                    out.push('\n');
                }
                out
            }
            Format::Csv => self.table.csv(),
            Format::Pretty => {
                let mut out = self.display.as_ref().unwrap_or(&self.table).pretty();
                for n in &self.notes {
                    out.push_str(n);
                    out.push('\n');
                }
                out
            }
        }
    }
}

pub struct Provenance {
    pub command: String,
    pub seed: u64,
}

impl Provenance {
    fn header(&self, format: Format) -> String {
        let version = env!("CARGO_PKG_VERSION");
        match format {
            Format::Json => {
                let v = json!({"provenance": {
                    "tool": "bricklayer",
                    "version": version,
                    "command": self.command,
                    "seed": self.seed,
                }});
                format!("{v}\n")
            }
            Format::Csv | Format::Pretty => {
                format!("# bricklayer {version}\n# command: {}\n# seed: {}\n", self.command, self.seed)
            }
        }
    }
}

/// Relative output paths land in `dir` when one is configured.
pub fn resolve_output(path: &Path, dir: Option<&Path>) -> PathBuf {
    match dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

pub fn emit(body: &str, format: Format, target: Option<&Path>, provenance: &Provenance) -> io::Result<()> {
    match target {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()
        }
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            let mut text = provenance.header(format);
            text.push_str(body);
            fs::write(path, text)
        }
    }
}
