//! CSV tables and the run manifest.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const TOOL_VERSION: &str = concat!("cryolink ", env!("CARGO_PKG_VERSION"));

/// Scientific notation with six significant digits, e.g. `1.50000e+00`.
/// Infinities print as `inf`.
pub fn sci(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let v = if v == 0.0 { 0.0 } else { v };
    let s = format!("{v:.5e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Integer count, or `inf` when unbounded.
pub fn count(v: Option<u64>) -> String {
    v.map_or_else(|| "inf".into(), |n| n.to_string())
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// A titled result table with optional `key = value` notes.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file_name: String,
    pub notes: Vec<(String, String)>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(file_name: impl Into<String>, header: Vec<&'static str>) -> Self {
        Self {
            file_name: file_name.into(),
            notes: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.push((key.to_string(), value.into()));
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// CSV with `#` manifest lines above the header.
    pub fn to_csv(&self, digest: &str) -> Result<String, CliError> {
        let mut out = format!("# {TOOL_VERSION}\n# config_sha256 = {digest}\n");
        for (k, v) in &self.notes {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).map_err(|e| CliError::io("csv", e))?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| CliError::io("csv", e))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::io("csv", e))?;
        out.push_str(&String::from_utf8(bytes).expect("utf-8 input"));
        Ok(out)
    }

    /// Space-aligned text for terminals.
    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: Vec<&str>| {
            let s: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            s.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = format!("[{}]\n", self.file_name);
        for (k, v) in &self.notes {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out.push_str(&line(self.header.clone()));
        for r in &self.rows {
            out.push_str(&line(r.iter().map(String::as_str).collect()));
        }
        out
    }
}

/// Provenance record written next to the CSV files.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    pub config_digest: String,
    /// Seconds since the Unix epoch; `SOURCE_DATE_EPOCH` when set.
    pub timestamp: u64,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, config_digest: &str, outputs: Vec<String>) -> Self {
        let timestamp = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or_else(|| {
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map_or(0, |d| d.as_secs())
            });
        Self {
            tool_version: TOOL_VERSION.into(),
            command: command.into(),
            config_digest: config_digest.into(),
            timestamp,
            outputs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_format() {
        assert_eq!(sci(1.5), "1.50000e+00");
        assert_eq!(sci(5.6e-6), "5.60000e-06");
        assert_eq!(sci(-3.2e120), "-3.20000e+120");
        assert_eq!(sci(0.0), "0.00000e+00");
        assert_eq!(sci(-0.0), "0.00000e+00");
        assert_eq!(sci(f64::INFINITY), "inf");
        assert_eq!(sci(123456789.0), "1.23457e+08");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new("t.csv", vec!["a", "b"]);
        t.note("duty", "0.33");
        t.push(vec!["x".into(), sci(2.0)]);
        let csv = t.to_csv("abc").unwrap();
        assert_eq!(csv, format!("# {TOOL_VERSION}\n# config_sha256 = abc\n# duty = 0.33\na,b\nx,2.00000e+00\n"));
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
