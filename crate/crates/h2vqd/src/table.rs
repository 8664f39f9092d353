//! Coefficient files: `R,a0,a1,a2,a3,a4`, one row per distance, plain decimals.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use h2vqd_core::{CoefficientRow, CoefficientTable};
use sha2::{Digest, Sha256};

use crate::error::{AppError, Result};

/// The bundled H₂ STO-3G parity-mapped coefficients, 0.30–1.80 Å.
pub const DEFAULT_TABLE: &str = include_str!("../data/h2_sto3g_parity.csv");
pub const DEFAULT_TABLE_NAME: &str = "builtin:h2_sto3g_parity.csv";

const COLUMNS: [&str; 6] = ["R", "a0", "a1", "a2", "a3", "a4"];

/// A parsed table together with where it came from.
#[derive(Debug, Clone)]
pub struct LoadedTable {
    pub table: CoefficientTable,
    pub origin: String,
    pub sha256: String,
}

pub fn default_table() -> LoadedTable {
    let table = parse(DEFAULT_TABLE.as_bytes(), DEFAULT_TABLE_NAME).expect("bundled table parses");
    LoadedTable {
        table,
        origin: DEFAULT_TABLE_NAME.to_owned(),
        sha256: sha256_hex(DEFAULT_TABLE.as_bytes()),
    }
}

/// Reads `path`, or the bundled table when `path` is `None`.
pub fn open_table(path: Option<&Path>) -> Result<LoadedTable> {
    let Some(path) = path else {
        return Ok(default_table());
    };
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| AppError::io(path, e))?;
    let origin = path.display().to_string();
    let table = parse(bytes.as_slice(), &origin)?;
    Ok(LoadedTable {
        table,
        origin,
        sha256: sha256_hex(&bytes),
    })
}

pub fn load_table<R: Read>(source: R) -> Result<CoefficientTable> {
    parse(source, "<input>")
}

fn parse<R: Read>(source: R, origin: &str) -> Result<CoefficientTable> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(source);
    let headers = reader
        .headers()
        .map_err(|e| csv_error(origin, e))?
        .clone();
    if headers.iter().all(str::is_empty) {
        return Err(AppError::parse(origin, 1, "empty input, expected header R,a0,a1,a2,a3,a4"));
    }
    let mut index = [0usize; 6];
    for (slot, name) in index.iter_mut().zip(COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| AppError::parse(origin, 1, format!("missing column {name}")))?;
    }

    let mut rows: Vec<(u64, CoefficientRow)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(origin, e))?;
        let line = record.position().map_or(0, |p| p.line());
        let mut values = [0.0; 6];
        for ((value, &col), name) in values.iter_mut().zip(&index).zip(COLUMNS) {
            let cell = record.get(col).unwrap_or("");
            *value = parse_number(cell).ok_or_else(|| {
                AppError::parse(origin, line, format!("column {name}: not a number: {cell:?}"))
            })?;
        }
        let row = CoefficientRow::new(values[0], values[1..].try_into().expect("five coefficients"))
            .map_err(|e| AppError::parse(origin, line, e.to_string()))?;
        if let Some((first, _)) = rows
            .iter()
            .find(|(_, r)| (r.r - row.r).abs() <= h2vqd_core::molecule::GRID_TOL)
        {
            return Err(AppError::parse(
                origin,
                line,
                format!("duplicate R = {} (first seen on line {first})", row.r),
            ));
        }
        rows.push((line, row));
    }
    if rows.is_empty() {
        return Err(AppError::Data {
            origin: origin.to_owned(),
            message: "table has a header but no rows".to_owned(),
        });
    }
    Ok(CoefficientTable::new(rows.into_iter().map(|(_, r)| r).collect())?)
}

/// Accepts the Unicode minus sign as well as `-`.
fn parse_number(cell: &str) -> Option<f64> {
    let v: f64 = cell.replace('\u{2212}', "-").parse().ok()?;
    v.is_finite().then_some(v)
}

fn csv_error(origin: &str, e: csv::Error) -> AppError {
    let line = e.position().map_or(0, |p| p.line());
    AppError::parse(origin, line, e.to_string())
}

/// Writes the table in the bundled layout. Values use the shortest decimal
/// that round-trips, padded to 2 places for `R` and 5 for coefficients, so
/// the bundled file is reproduced byte for byte.
pub fn write_table<W: Write>(table: &CoefficientTable, mut out: W) -> io::Result<()> {
    writeln!(out, "{}", COLUMNS.join(","))?;
    for row in table.rows() {
        write!(out, "{}", decimal(row.r, 2))?;
        for a in row.coefficients() {
            write!(out, ",{}", decimal(a, 5))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn decimal(x: f64, min_decimals: usize) -> String {
    let mut text = format!("{x}");
    let decimals = match text.split_once('.') {
        Some((_, d)) => d.len(),
        None => {
            text.push('.');
            0
        }
    };
    text.extend(std::iter::repeat('0').take(min_decimals.saturating_sub(decimals)));
    text
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}
