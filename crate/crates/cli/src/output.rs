//! Writing CSV, SVG and JSON artefacts.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use interfero_core::oracle::tabulated::TabulatedMode2d;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Json,
}

/// Destination directory plus the set of requested formats.
pub struct Sink {
    dir: PathBuf,
    formats: BTreeSet<Format>,
    written: Vec<PathBuf>,
}

pub fn number(v: f64) -> String {
    format!("{v:.15e}")
}

impl Sink {
    pub fn new(dir: &Path, formats: &[Format]) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Self { dir: dir.to_path_buf(), formats: formats.iter().copied().collect(), written: Vec::new() })
    }

    pub fn wants(&self, format: Format) -> bool {
        self.formats.contains(&format)
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    fn put(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(path);
        Ok(())
    }

    /// Columnar CSV preceded by `#` lines naming the target and carrying the
    /// run configuration as JSON.
    pub fn csv(&mut self, stem: &str, target: &str, config: &Value, columns: &[&str], data: &[&[f64]]) -> Result<()> {
        if !self.wants(Format::Csv) {
            return Ok(());
        }
        let rows = data.first().map_or(0, |c| c.len());
        debug_assert!(data.iter().all(|c| c.len() == rows));
        let mut text = header(target, config);
        text.push_str(&columns.join(","));
        text.push('\n');
        for i in 0..rows {
            let line: Vec<String> = data.iter().map(|c| number(c[i])).collect();
            text.push_str(&line.join(","));
            text.push('\n');
        }
        self.put(&format!("{stem}.csv"), &text)
    }

    /// A joint spectrum written in the tabulated matrix format, readable back
    /// through `--tabulated`.
    pub fn matrix_csv(&mut self, stem: &str, target: &str, config: &Value, table: &TabulatedMode2d) -> Result<()> {
        if !self.wants(Format::Csv) {
            return Ok(());
        }
        let mut text = header(target, config);
        text.push_str(&table.to_text());
        self.put(&format!("{stem}.csv"), &text)
    }

    pub fn svg(&mut self, stem: &str, render: impl FnOnce() -> String) -> Result<()> {
        if !self.wants(Format::Svg) {
            return Ok(());
        }
        self.put(&format!("{stem}.svg"), &render())
    }

    pub fn json<T: Serialize>(&mut self, stem: &str, value: &T) -> Result<()> {
        if !self.wants(Format::Json) {
            return Ok(());
        }
        self.json_always(stem, value)
    }

    /// JSON written regardless of the requested formats.
    pub fn json_always<T: Serialize>(&mut self, stem: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.put(&format!("{stem}.json"), &text)
    }
}

fn header(target: &str, config: &Value) -> String {
    format!("# interfero {target}\n# config: {config}\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_has_commented_header() {
        let dir = std::env::temp_dir().join(format!("interfero-out-{}", std::process::id()));
        let mut sink = Sink::new(&dir, &[Format::Csv]).unwrap();
        sink.csv("t", "homi", &json!({"n_modes": 2}), &["a", "b"], &[&[1.0, 2.0], &[0.5, 0.25]]).unwrap();
        sink.svg("t", || unreachable!()).unwrap();
        let text = fs::read_to_string(dir.join("t.csv")).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# interfero homi");
        assert_eq!(lines[1], r#"# config: {"n_modes":2}"#);
        assert_eq!(lines[2], "a,b");
        assert_eq!(lines[3], "1.000000000000000e0,5.000000000000000e-1");
        assert_eq!(sink.written().len(), 1);
        fs::remove_dir_all(dir).unwrap();
    }
}
