use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};

/// What a subcommand produced: a verdict, a human rendering and a structured one.
pub struct Report {
    pub ok: bool,
    pub human: String,
    pub data: Value,
}

impl Report {
    pub fn new(human: String, data: Value) -> Self {
        Report {
            ok: true,
            human,
            data,
        }
    }

    pub fn verdict(ok: bool, human: String, data: Value) -> Self {
        Report { ok, human, data }
    }

    /// An artifact goes to `out` when given, followed by `summary`; otherwise the artifact
    /// itself is the output.
    pub fn artifact(artifact: String, out: Option<&Path>, summary: String) -> Result<Self> {
        match out {
            Some(path) => {
                std::fs::write(path, format!("{artifact}\n"))
                    .with_context(|| format!("writing {}", path.display()))?;
                let human = format!("{summary}\nwritten to {}", path.display());
                let data = json!({ "summary": summary, "written": path.display().to_string() });
                Ok(Report::new(human, data))
            }
            None => {
                let data: Value = serde_json::from_str(&artifact)?;
                Ok(Report::new(artifact, data))
            }
        }
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out.trim_end().to_string()
}

pub fn braces(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(" "))
}
