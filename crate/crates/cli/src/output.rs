use crate::error::{CliError, CliResult};
use serde::Serialize;
use std::fs;
use std::path::Path;

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(CliError::io(dir))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(CliError::io(path))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write_text(path, &s)
}

pub fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<()> {
    let io_err = |e: csv::Error| CliError::Io { path: path.to_path_buf(), source: e.into() };
    let mut w = csv::Writer::from_path(path).map_err(io_err)?;
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(&row).map_err(io_err)?;
    }
    w.flush().map_err(CliError::io(path))
}

pub fn write_matrix(path: &Path, m: &[Vec<f64>]) -> CliResult<()> {
    let header: Vec<String> = std::iter::once("row".to_string()).chain((0..m.len()).map(|j| j.to_string())).collect();
    let refs: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(
        path,
        &refs,
        m.iter().enumerate().map(|(i, row)| std::iter::once(i.to_string()).chain(row.iter().map(num)).collect()),
    )
}

/// Shortest decimal that reads back to the same `f64`.
pub fn num(v: &f64) -> String {
    format!("{v:?}")
}
