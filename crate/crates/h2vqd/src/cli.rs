use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use h2vqd_core::measurement::DEFAULT_SHOTS;
use h2vqd_core::{full_report, BetaChoice, Block, Formulation, SolverConfig, SpectrumReport};
use serde::Serialize;

use crate::curve::{run_curve, solve_block_records, write_curve_csv, CurveConfig, CurveRecord, Mode, ACCURACY_TOL};
use crate::error::{AppError, Result};
use crate::manifest::{manifest_path, RunManifest};
use crate::plot::{read_curve, render_data, render_script};
use crate::table::{open_table, LoadedTable};

/// Block-union check tolerance for `oracle`, Hartree.
pub const BLOCK_UNION_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "h2vqd", version, about = "VQE/VQD energy curves for the two-qubit H2 Hamiltonian")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep every tabulated R: ground and first excited level of both blocks.
    Curve {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "h2vqd_curve.csv")]
        out: PathBuf,
    },
    /// Solve a single (R, block, level) and print it as JSON.
    Point {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        r: f64,
        #[arg(long, value_enum)]
        block: BlockArg,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        level: u8,
    },
    /// Exact spectra of every row and the block-union check.
    Oracle {
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value = "h2vqd_oracle.csv")]
        out: PathBuf,
    },
    /// Turn a curve CSV into a gnuplot script and data file.
    Plot {
        curve: PathBuf,
        /// Script path; the data file is written alongside with extension `.dat`.
        #[arg(long, default_value = "h2vqd_plot.gp")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Coefficient CSV; the bundled H2 table when omitted.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormulationArg::TwoQubit)]
    pub formulation: FormulationArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_SHOTS, value_parser = parse_shots)]
    pub shots: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Deflation weight in Hartree, or `auto`.
    #[arg(long, default_value = "auto", value_parser = parse_beta)]
    pub beta: BetaChoice,
}

impl RunArgs {
    fn mode(&self) -> Mode {
        match self.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Shots => Mode::Shots {
                shots: self.shots,
                seed: self.seed,
            },
        }
    }

    fn curve_config(&self) -> CurveConfig {
        CurveConfig {
            formulation: self.formulation.into(),
            mode: self.mode(),
            solver: SolverConfig {
                beta: self.beta,
                ..SolverConfig::default()
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormulationArg {
    TwoQubit,
    OneQubit,
}

impl From<FormulationArg> for Formulation {
    fn from(f: FormulationArg) -> Self {
        match f {
            FormulationArg::TwoQubit => Formulation::TwoQubit,
            FormulationArg::OneQubit => Formulation::OneQubit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Shots,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BlockArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<BlockArg> for Block {
    fn from(b: BlockArg) -> Self {
        match b {
            BlockArg::A => Block::A,
            BlockArg::B => Block::B,
        }
    }
}

fn parse_beta(s: &str) -> std::result::Result<BetaChoice, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(BetaChoice::Auto);
    }
    match s.parse::<f64>() {
        Ok(b) if b.is_finite() && b >= 0.0 => Ok(BetaChoice::Fixed(b)),
        _ => Err(format!("expected `auto` or a non-negative number, got {s:?}")),
    }
}

fn parse_shots(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Curve { run, out } => cmd_curve(&run, &out, stdout),
        Command::Point {
            run,
            r,
            block,
            level,
        } => cmd_point(&run, r, block.into(), level, stdout),
        Command::Oracle { table, out } => cmd_oracle(table.as_deref(), &out, stdout),
        Command::Plot { curve, out } => cmd_plot(&curve, &out, stdout),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| AppError::io(path, e))
}

fn finish(path: &Path, result: std::io::Result<()>) -> Result<()> {
    result.map_err(|e| AppError::io(path, e))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn accuracy(records: &[CurveRecord], mode: Mode) -> Result<()> {
    if mode != Mode::Exact {
        return Ok(());
    }
    let failures = records.iter().filter(|r| !r.within_tolerance()).count();
    if failures == 0 {
        Ok(())
    } else {
        Err(AppError::Accuracy {
            failures,
            total: records.len(),
            tolerance: ACCURACY_TOL,
        })
    }
}

pub fn cmd_curve(args: &RunArgs, out: &Path, stdout: &mut dyn Write) -> Result<()> {
    let table = open_table(args.table.as_deref())?;
    let cfg = args.curve_config();
    let records = run_curve(&table.table, &cfg)?;

    let manifest_file = manifest_path(out);
    let mut w = create(out)?;
    finish(
        out,
        write_curve_csv(&records, &file_name(&manifest_file), &mut w).and_then(|_| w.flush()),
    )?;
    let manifest =
        RunManifest::new("curve", &table, &records).with_run(cfg.formulation, cfg.mode, &cfg.solver);
    let mut w = create(&manifest_file)?;
    finish(&manifest_file, manifest.write(&mut w).and_then(|_| w.flush()))?;

    let worst = records.iter().map(|r| r.abs_error).fold(0.0, f64::max);
    let _ = writeln!(
        stdout,
        "wrote {} points to {} (max abs_error {worst:.3e})",
        records.len(),
        out.display()
    );
    accuracy(&records, cfg.mode)
}

#[derive(Serialize)]
struct PointOutput<'a> {
    #[serde(flatten)]
    record: &'a CurveRecord,
    manifest: RunManifest<()>,
}

pub fn cmd_point(args: &RunArgs, r: f64, block: Block, level: u8, stdout: &mut dyn Write) -> Result<()> {
    let table = open_table(args.table.as_deref())?;
    let row = *table.table.row_at(r)?;
    let index = table.table.rows().iter().position(|x| x.r == row.r).expect("row from table");
    let cfg = args.curve_config();
    let seed = match cfg.mode {
        Mode::Shots { seed, .. } => seed,
        Mode::Exact => 0,
    };
    // Same stream as the curve sweep so a point matches its curve row.
    let point_seed = h2vqd_core::measurement::derive_seed(seed, (2 * index + block as usize) as u64);
    let records = solve_block_records(&row, block, &cfg, point_seed)?;
    let record = &records[level as usize];
    let output = PointOutput {
        record,
        manifest: RunManifest::new("point", &table, ()).with_run(cfg.formulation, cfg.mode, &cfg.solver),
    };
    serde_json::to_writer_pretty(&mut *stdout, &output).map_err(|e| AppError::io("<stdout>", e.into()))?;
    let _ = writeln!(stdout);
    accuracy(std::slice::from_ref(record), cfg.mode)
}

pub fn cmd_oracle(table: Option<&Path>, out: &Path, stdout: &mut dyn Write) -> Result<()> {
    let table: LoadedTable = open_table(table)?;
    let reports: Vec<SpectrumReport> = table.table.rows().iter().map(full_report).collect();
    let manifest_file = manifest_path(out);
    let mut w = create(out)?;
    finish(out, write_oracle_csv(&reports, &file_name(&manifest_file), &mut w).and_then(|_| w.flush()))?;
    let mut w = create(&manifest_file)?;
    finish(
        &manifest_file,
        RunManifest::new("oracle", &table, &reports).write(&mut w).and_then(|_| w.flush()),
    )?;

    let mut failed = 0;
    for rep in &reports {
        let ok = rep.block_union_holds(BLOCK_UNION_TOL);
        failed += usize::from(!ok);
        let _ = writeln!(
            stdout,
            "R={:.2} block-union {} (deviation {:.1e})",
            rep.r,
            if ok { "PASS" } else { "FAIL" },
            rep.block_union_deviation()
        );
    }
    let _ = writeln!(stdout, "wrote {} rows to {}", reports.len(), out.display());
    if failed > 0 {
        return Err(AppError::Data {
            origin: table.origin,
            message: format!("block-union check failed on {failed} rows"),
        });
    }
    Ok(())
}

pub fn write_oracle_csv<W: Write>(reports: &[SpectrumReport], manifest_ref: &str, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# manifest: {manifest_ref}")?;
    writeln!(out, "R,e0,e1,e2,e3,a_0,a_1,b_0,b_1,block_union_deviation,residual")?;
    for rep in reports {
        write!(out, "{:.2}", rep.r)?;
        for e in rep.eigenvalues_4q.iter().chain(&rep.eigenvalues_a).chain(&rep.eigenvalues_b) {
            write!(out, ",{e:.10}")?;
        }
        writeln!(out, ",{:.3e},{:.3e}", rep.block_union_deviation(), rep.residual)?;
    }
    Ok(())
}

pub fn cmd_plot(curve: &Path, out: &Path, stdout: &mut dyn Write) -> Result<()> {
    let file = File::open(curve).map_err(|e| AppError::io(curve, e))?;
    let parsed = read_curve(file, &curve.display().to_string())?;
    let data_path = out.with_extension("dat");
    let script = render_script(&parsed, &file_name(curve), &file_name(&data_path));
    std::fs::write(&data_path, render_data(&parsed)).map_err(|e| AppError::io(&data_path, e))?;
    std::fs::write(out, script).map_err(|e| AppError::io(out, e))?;
    let _ = writeln!(stdout, "wrote {} and {}", out.display(), data_path.display());
    Ok(())
}
