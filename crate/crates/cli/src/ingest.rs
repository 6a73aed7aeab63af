//! CSV datasets: numeric feature columns, label in the last column, optional
//! header row.

use crate::error::{CliError, CliResult};
use multiboost::{Dataset, Label, Task};
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

/// Raw numeric table with 1-based source line numbers.
struct Table {
    rows: Vec<(usize, Vec<String>)>,
}

fn read_table(path: &Path, reader: impl Read) -> CliResult<Table> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(reader);
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = rec.position().map_or(rows.len() + 1, |p| p.line() as usize);
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        rows.push((line, rec.iter().map(str::to_owned).collect()));
    }
    let is_header = rows.first().is_some_and(|(_, r)| r.iter().any(|f| f.parse::<f64>().is_err()));
    if is_header {
        rows.remove(0);
    }
    if rows.is_empty() {
        return Err(CliError::Parse { path: path.to_path_buf(), line: 1, msg: "no data rows".into() });
    }
    Ok(Table { rows })
}

fn parse_error(path: &Path, line: usize, msg: String) -> CliError {
    CliError::Parse { path: path.to_path_buf(), line, msg }
}

/// Raw last-column cells with their line numbers.
type LabelCells = Vec<(usize, String)>;

fn split_columns(path: &Path, table: &Table) -> CliResult<(Vec<Vec<f64>>, LabelCells)> {
    let width = table.rows[0].1.len();
    if width < 2 {
        return Err(parse_error(path, table.rows[0].0, "need at least one feature and a label".into()));
    }
    let mut xs = Vec::with_capacity(table.rows.len());
    let mut labels = Vec::with_capacity(table.rows.len());
    for (line, row) in &table.rows {
        if row.len() != width {
            return Err(parse_error(path, *line, format!("expected {width} fields, found {}", row.len())));
        }
        let x = row[..width - 1]
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| parse_error(path, *line, format!("non-numeric feature '{f}'")))
            })
            .collect::<CliResult<Vec<f64>>>()?;
        xs.push(x);
        labels.push((*line, row[width - 1].clone()));
    }
    Ok((xs, labels))
}

/// Reads a classification dataset.
///
/// Labels must be integers. A label set inside `{-1, 1}` or `{0, 1}` gives a
/// binary dataset (0 maps to -1); otherwise labels must be non-negative and
/// the class count is the largest label plus one.
pub fn read_dataset(path: &Path, reader: impl Read) -> CliResult<Dataset> {
    let table = read_table(path, reader)?;
    let (xs, raw) = split_columns(path, &table)?;
    let mut ys: Vec<Label> = Vec::with_capacity(raw.len());
    for (line, f) in &raw {
        let y = f
            .parse::<Label>()
            .ok()
            .or_else(|| f.parse::<f64>().ok().filter(|v| v.fract() == 0.0 && v.abs() < 1e9).map(|v| v as Label))
            .ok_or_else(|| parse_error(path, *line, format!("unknown label '{f}'")))?;
        ys.push(y);
    }
    let (lo, hi) = (*ys.iter().min().expect("nonempty"), *ys.iter().max().expect("nonempty"));
    let data = if lo >= -1 && hi <= 1 && !ys.contains(&0) {
        Dataset::binary(xs, ys)
    } else if lo >= 0 && hi <= 1 {
        Dataset::binary(xs, ys.into_iter().map(|y| 2 * y - 1).collect())
    } else {
        if let Some(k) = ys.iter().position(|&y| y < 0) {
            return Err(parse_error(path, raw[k].0, format!("unknown label '{}'", raw[k].1)));
        }
        Dataset::multiclass(xs, ys, hi as usize + 1)
    };
    data.map_err(|e| parse_error(path, table.rows[0].0, e.to_string()))
}

pub fn ingest_csv(path: &Path) -> CliResult<Dataset> {
    let file = File::open(path).map_err(CliError::io(path))?;
    read_dataset(path, file)
}

/// Reads a regression table: numeric features and a real-valued target.
pub fn ingest_regression_csv(path: &Path) -> CliResult<(Vec<Vec<f64>>, Vec<f64>)> {
    let file = File::open(path).map_err(CliError::io(path))?;
    let table = read_table(path, file)?;
    let (xs, raw) = split_columns(path, &table)?;
    let ys = raw
        .iter()
        .map(|(line, f)| {
            f.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_error(path, *line, format!("non-numeric target '{f}'")))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    Ok((xs, ys))
}

/// Writes `x1..xd,y` with a header; floats use the shortest round-trip form.
pub fn write_dataset(data: &Dataset, out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = (1..=data.dim()).map(|j| format!("x{j}")).collect();
    header.push("y".into());
    w.write_record(&header)?;
    for i in 0..data.len() {
        let mut row: Vec<String> = data.x(i).iter().map(|v| format!("{v:?}")).collect();
        row.push(data.y(i).to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(data: &Dataset, path: &Path) -> CliResult<()> {
    let file = File::create(path).map_err(CliError::io(path))?;
    write_dataset(data, file).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e.into() })
}

pub fn describe(data: &Dataset) -> String {
    match data.task() {
        Task::Binary => format!("{} samples, {} features, binary", data.len(), data.dim()),
        Task::Multiclass { classes } => {
            format!("{} samples, {} features, {classes} classes", data.len(), data.dim())
        }
    }
}
