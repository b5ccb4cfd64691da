//! Command reports: a stable JSON schema and a plain-text rendering.
//!
//! Every number in a report is an exact rational written `p` or `p/q`.

use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// Bumped only on incompatible changes to the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<String>,
    /// `ok` or `input_error`.
    pub status: String,
    pub exit_code: i32,
    pub verdict: Option<String>,
    pub tables: Vec<Table>,
    /// Output objects in the input text format.
    pub documents: Vec<NamedDocument>,
    pub error: Option<ErrorInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedDocument {
    pub name: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub message: String,
    pub input: Option<String>,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn cell(&self, row: usize, column: &str) -> Option<&str> {
        let c = self.columns.iter().position(|x| x == column)?;
        self.rows.get(row).map(|r| r[c].as_str())
    }
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            inputs,
            status: "ok".into(),
            exit_code: 0,
            verdict: None,
            tables: Vec::new(),
            documents: Vec::new(),
            error: None,
        }
    }

    /// Sets the verdict and the matching exit code.
    pub fn verdict(&mut self, verdict: &str, holds: bool) {
        self.verdict = Some(verdict.into());
        self.exit_code = if holds { 0 } else { 1 };
    }

    pub fn input_error(&mut self, err: ErrorInfo) {
        self.status = "input_error".into();
        self.exit_code = 2;
        self.verdict = None;
        self.tables.clear();
        self.documents.clear();
        self.error = Some(err);
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn document(&self, name: &str) -> Option<&str> {
        self.documents.iter().find(|d| d.name == name).map(|d| d.text.as_str())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if !self.inputs.is_empty() {
            let _ = writeln!(out, "inputs: {}", self.inputs.join(", "));
        }
        if let Some(e) = &self.error {
            let mut loc = String::new();
            if let Some(i) = &e.input {
                loc.push_str(i);
                loc.push_str(": ");
            }
            if let (Some(l), Some(c)) = (e.line, e.column) {
                let _ = write!(loc, "line {l}, column {c}: ");
            }
            let _ = writeln!(out, "error: {loc}{}", e.message);
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n[{}]", t.name);
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
            for r in &t.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: &[String]| -> String {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&t.columns));
            for r in &t.rows {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        for d in &self.documents {
            let _ = writeln!(out, "\n[{}]\n{}", d.name, d.text.trim_end());
        }
        let _ = writeln!(out, "\nexit: {}", self.exit_code);
        out
    }
}
