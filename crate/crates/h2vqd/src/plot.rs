//! gnuplot script and data file from a curve CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;

use crate::error::{AppError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub r: f64,
    pub block: String,
    pub level: u8,
    pub energy: f64,
    pub oracle_energy: f64,
    pub measured: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveFile {
    /// Leading `#` lines, verbatim.
    pub preamble: Vec<String>,
    pub rows: Vec<CurveRow>,
}

impl CurveFile {
    pub fn has_shots(&self) -> bool {
        self.rows.iter().any(|r| r.measured.is_some())
    }

    /// `(block, level)` series in A0, A1, B0, B1 order.
    pub fn series(&self) -> BTreeMap<(String, u8), Vec<&CurveRow>> {
        let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for row in &self.rows {
            out.entry((row.block.clone(), row.level)).or_default().push(row);
        }
        for rows in out.values_mut() {
            rows.sort_by(|a, b| a.r.total_cmp(&b.r));
        }
        out
    }
}

pub fn read_curve<R: Read>(mut source: R, origin: &str) -> Result<CurveFile> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| AppError::parse(origin, 0, e.to_string()))?;
    let preamble: Vec<String> = text
        .lines()
        .take_while(|l| l.starts_with('#'))
        .map(str::to_owned)
        .collect();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| AppError::parse(origin, line_of(&e), e.to_string()))?
        .clone();
    let header_line = preamble.len() as u64 + 1;
    if headers.iter().all(str::is_empty) {
        return Err(AppError::parse(origin, header_line, "empty curve file"));
    }
    let col = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| AppError::parse(origin, header_line, format!("missing column {name}")))
    };
    let (c_r, c_block, c_level, c_energy, c_oracle) =
        (col("R")?, col("block")?, col("level")?, col("energy")?, col("oracle_energy")?);
    let shots = match (col("measured_energy"), col("measured_error")) {
        (Ok(m), Ok(e)) => Some((m, e)),
        _ => None,
    };

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| AppError::parse(origin, line_of(&e), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = |c: usize| record.get(c).unwrap_or("");
        let number = |c: usize, name: &str| -> Result<f64> {
            cell(c)
                .parse::<f64>()
                .map_err(|_| AppError::parse(origin, line, format!("{name}: not a number: {:?}", cell(c))))
        };
        let block = cell(c_block);
        if block != "A" && block != "B" {
            return Err(AppError::parse(origin, line, format!("block: expected A or B, got {block:?}")));
        }
        let level = cell(c_level)
            .parse::<u8>()
            .ok()
            .filter(|l| *l <= 1)
            .ok_or_else(|| AppError::parse(origin, line, format!("level: expected 0 or 1, got {:?}", cell(c_level))))?;
        rows.push(CurveRow {
            r: number(c_r, "R")?,
            block: block.to_owned(),
            level,
            energy: number(c_energy, "energy")?,
            oracle_energy: number(c_oracle, "oracle_energy")?,
            measured: match shots {
                Some((m, e)) => Some((number(m, "measured_energy")?, number(e, "measured_error")?)),
                None => None,
            },
        });
    }
    if rows.is_empty() {
        return Err(AppError::parse(origin, header_line + 1, "curve file has no data rows"));
    }
    Ok(CurveFile { preamble, rows })
}

fn line_of(e: &csv::Error) -> u64 {
    e.position().map_or(0, |p| p.line())
}

/// gnuplot data: one indexed dataset per series, columns
/// `R energy oracle [measured error]`.
pub fn render_data(curve: &CurveFile) -> String {
    let mut out = String::new();
    for (i, ((block, level), rows)) in curve.series().iter().enumerate() {
        if i > 0 {
            out.push_str("\n\n");
        }
        let _ = writeln!(out, "# {block}{level}");
        for row in rows {
            let _ = write!(out, "{} {} {}", row.r, row.energy, row.oracle_energy);
            if let Some((m, e)) = row.measured {
                let _ = write!(out, " {m} {e}");
            }
            out.push('\n');
        }
    }
    out
}

/// Exact curves draw one line per level; shot curves draw the oracle lines
/// with the measured points and error bars on top.
pub fn render_script(curve: &CurveFile, source_name: &str, data_name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# gnuplot script generated by h2vqd plot from {source_name}");
    for line in &curve.preamble {
        let _ = writeln!(out, "# source {}", line.trim_start_matches('#').trim());
    }
    out.push_str(concat!(
        "set xlabel \"R (Angstrom)\"\n",
        "set ylabel \"Energy (Hartree)\"\n",
        "set key outside right\n",
        "set grid\n",
    ));
    let mut items = Vec::new();
    for (i, (block, level)) in curve.series().keys().enumerate() {
        let color = i + 1;
        if curve.has_shots() {
            items.push(format!(
                "'{data_name}' index {i} using 1:3 with lines lc {color} title \"{block}{level} exact\""
            ));
            items.push(format!(
                "'{data_name}' index {i} using 1:4:5 with yerrorbars pt 7 lc {color} title \"{block}{level} measured\""
            ));
        } else {
            items.push(format!(
                "'{data_name}' index {i} using 1:2 with lines lw 2 lc {color} title \"{block}{level}\""
            ));
        }
    }
    let _ = writeln!(out, "plot {}", items.join(", \\\n     "));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXACT: &str = "# manifest: c.manifest.json\n\
        R,block,level,energy,theta_opt,evaluations,oracle_energy,abs_error\n\
        0.70,A,0,-1.891,0.1,40,-1.891,1.0e-12\n\
        0.70,A,1,-0.174,0.1,40,-0.174,1.0e-12\n\
        0.70,B,0,-1.234,0.7,40,-1.234,1.0e-12\n\
        0.70,B,1,-0.876,0.7,40,-0.876,1.0e-12\n\
        0.80,A,0,-1.9,0.1,40,-1.9,1.0e-12\n";

    #[test]
    fn reads_exact_curve() {
        let c = read_curve(EXACT.as_bytes(), "c.csv").unwrap();
        assert_eq!(c.preamble, ["# manifest: c.manifest.json"]);
        assert_eq!(c.rows.len(), 5);
        assert!(!c.has_shots());
        let series = c.series();
        assert_eq!(series.len(), 4);
        assert_eq!(series[&("A".to_owned(), 0)].len(), 2);
    }

    #[test]
    fn exact_script_draws_four_lines() {
        let c = read_curve(EXACT.as_bytes(), "c.csv").unwrap();
        let script = render_script(&c, "c.csv", "c.dat");
        assert_eq!(script.matches("with lines").count(), 4);
        assert!(!script.contains("yerrorbars"));
        assert!(script.contains("c.manifest.json"));
        assert_eq!(render_data(&c).matches("\n\n").count(), 3);
    }

    #[test]
    fn shot_script_has_error_bars() {
        let text = "R,block,level,energy,theta_opt,evaluations,oracle_energy,abs_error,measured_energy,measured_error\n\
            0.70,A,0,-1.891,0.1,40,-1.891,1e-12,-1.89,0.004\n\
            0.70,B,1,-0.876,0.7,40,-0.876,1e-12,-0.88,0.003\n";
        let c = read_curve(text.as_bytes(), "s.csv").unwrap();
        assert!(c.has_shots());
        let script = render_script(&c, "s.csv", "s.dat");
        assert_eq!(script.matches("yerrorbars").count(), 2);
        assert_eq!(script.matches("with lines").count(), 2);
        assert!(render_data(&c).contains("0.7 -1.891 -1.891 -1.89 0.004"));
    }

    #[test]
    fn malformed_cell_names_line() {
        let bad = EXACT.replace("0.70,B,0,-1.234", "0.70,B,0,oops");
        let e = read_curve(bad.as_bytes(), "c.csv").unwrap_err().to_string();
        assert!(e.contains("line 5") && e.contains("energy"), "{e}");
    }

    #[test]
    fn bad_block_and_level() {
        let e = read_curve(EXACT.replace("0.80,A,0", "0.80,C,0").as_bytes(), "c").unwrap_err();
        assert!(e.to_string().contains("line 7"), "{e}");
        let e = read_curve(EXACT.replace("0.80,A,0", "0.80,A,2").as_bytes(), "c").unwrap_err();
        assert!(e.to_string().contains("level"), "{e}");
    }

    #[test]
    fn missing_column_and_empty() {
        let e = read_curve("R,block,level\n".as_bytes(), "c").unwrap_err();
        assert!(e.to_string().contains("missing column energy"));
        assert!(read_curve("".as_bytes(), "c").is_err());
    }
}
