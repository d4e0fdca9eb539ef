//! CSV emission: '#' header lines echoing the configuration, then a column
//! row and data rows with 12 significant digits.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::config::RunConfig;
use crate::CliError;

pub fn num(x: f64) -> String {
    if x == 0.0 {
        format!("{:.11e}", 0.0)
    } else if x.is_finite() {
        format!("{x:.11e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    text: String,
}

impl Table {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        let mut text = String::new();
        writeln!(text, "# casthermo {} {command}", env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(text, "# config-sha256 {}", config.hash(command)).unwrap();
        writeln!(text, "# config {}", config.canonical_json()).unwrap();
        Table { text }
    }

    pub fn comment(&mut self, line: &str) {
        writeln!(self.text, "# {line}").unwrap();
    }

    pub fn columns(&mut self, names: &[&str]) {
        writeln!(self.text, "{}", names.join(",")).unwrap();
    }

    pub fn row(&mut self, fields: &[String]) {
        writeln!(self.text, "{}", fields.join(",")).unwrap();
    }

    pub fn numbers(&mut self, values: &[f64]) {
        let fields: Vec<String> = values.iter().map(|&v| num(v)).collect();
        self.row(&fields);
    }

    #[cfg(test)]
    pub fn as_str(&self) -> &str {
        &self.text
    }

    /// Writes to `path`, or to stdout when no path is given.
    pub fn emit(&self, path: Option<&Path>) -> Result<(), CliError> {
        match path {
            Some(p) => std::fs::write(p, &self.text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
            None => std::io::stdout()
                .write_all(self.text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string())),
        }
    }
}
