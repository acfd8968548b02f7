//! Reference-value files shipped under `crates/core/fixtures`.
//!
//! Records are `name<TAB>re(s)<TAB>im(s)<TAB>re(val)<TAB>im(val)`; lines starting
//! with `#` are headers.

use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Environment variable that overrides the fixture directory.
pub const FIXTURES_ENV: &str = "SUMMA_FIXTURES";

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub name: String,
    pub arg: Complex64,
    pub value: Complex64,
}

/// Fixture directory: `$SUMMA_FIXTURES` if set, else the one in this crate.
pub fn fixture_dir() -> PathBuf {
    match std::env::var_os(FIXTURES_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures")),
    }
}

pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            return Err(Error::Format {
                line: i + 1,
                msg: format!("expected 5 tab-separated columns, found {}", cols.len()),
            });
        }
        let num = |k: usize| -> Result<f64> {
            cols[k].parse::<f64>().map_err(|e| Error::Format {
                line: i + 1,
                msg: format!("column {}: {e}", k + 1),
            })
        };
        out.push(Record {
            name: cols[0].to_string(),
            arg: Complex64::new(num(1)?, num(2)?),
            value: Complex64::new(num(3)?, num(4)?),
        });
    }
    Ok(out)
}

pub fn load_records(path: &Path) -> Result<Vec<Record>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_records(&text)
}

/// Records of one fixture file in the fixture directory.
pub fn load(file: &str) -> Result<Vec<Record>> {
    load_records(&fixture_dir().join(file))
}

/// First record with `name` and real argument `x`.
pub fn lookup(records: &[Record], name: &str, x: f64) -> Option<Complex64> {
    records
        .iter()
        .find(|r| r.name == name && r.arg.re == x && r.arg.im == 0.0)
        .map(|r| r.value)
}
