//! Energy-versus-R sweeps over a coefficient table.

use std::io::{self, Write};

use h2vqd_core::measurement::derive_seed;
use h2vqd_core::vqd::solve_block;
use h2vqd_core::{
    energy_from_measurements, full_report, Block, CoefficientRow, CoefficientTable, EnergyEstimate,
    EnergyPoint, Formulation, HamiltonianModel, Readout, SolverConfig,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

/// Exact-mode pass threshold on `|energy − oracle|`, Hartree.
pub const ACCURACY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Mode {
    Exact,
    Shots { shots: usize, seed: u64 },
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Shots { .. } => "shots",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CurveConfig {
    pub formulation: Formulation,
    pub mode: Mode,
    pub solver: SolverConfig,
}

/// One `(R, block, level)` result with its oracle reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRecord {
    #[serde(flatten)]
    pub point: EnergyPoint,
    pub oracle_energy: f64,
    pub abs_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured: Option<EnergyEstimate>,
}

impl CurveRecord {
    pub fn within_tolerance(&self) -> bool {
        self.abs_error < ACCURACY_TOL
    }
}

pub fn model_for(formulation: Formulation, block: Block) -> HamiltonianModel {
    match (formulation, block) {
        (Formulation::TwoQubit, _) => HamiltonianModel::TwoQubit,
        (Formulation::OneQubit, Block::A) => HamiltonianModel::OneQubitA,
        (Formulation::OneQubit, Block::B) => HamiltonianModel::OneQubitB,
    }
}

/// Both levels of one block. In shot mode the optimum found on the exact
/// statevector is re-measured with `derive_seed(point_seed, level)`.
pub fn solve_block_records(
    row: &CoefficientRow,
    block: Block,
    cfg: &CurveConfig,
    point_seed: u64,
) -> Result<[CurveRecord; 2]> {
    let report = full_report(row);
    let oracle = match block {
        Block::A => report.eigenvalues_a,
        Block::B => report.eigenvalues_b,
    };
    let solved = solve_block(row, cfg.formulation, block, &cfg.solver)?;
    let mut out = Vec::with_capacity(2);
    for (point, state) in solved {
        let level = point.level as usize;
        let measured = match cfg.mode {
            Mode::Exact => None,
            Mode::Shots { shots, .. } => Some(energy_from_measurements(
                row,
                &state,
                model_for(cfg.formulation, block),
                Readout::Shots {
                    shots,
                    seed: derive_seed(point_seed, level as u64),
                },
            )?),
        };
        out.push(CurveRecord {
            point,
            oracle_energy: oracle[level],
            abs_error: (point.energy - oracle[level]).abs(),
            measured,
        });
    }
    Ok(out.try_into().expect("two levels"))
}

/// Every row in parallel; output is ordered by R, then block A/B, then level.
/// Row `i`, block `b` draws shots from `derive_seed(seed, 2i + b)`.
pub fn run_curve(table: &CoefficientTable, cfg: &CurveConfig) -> Result<Vec<CurveRecord>> {
    let seed = match cfg.mode {
        Mode::Shots { seed, .. } => seed,
        Mode::Exact => 0,
    };
    let per_row: Vec<Result<Vec<CurveRecord>>> = table
        .rows()
        .par_iter()
        .enumerate()
        .map(|(i, row)| {
            let mut records = Vec::with_capacity(4);
            for (b, block) in Block::BOTH.into_iter().enumerate() {
                let point_seed = derive_seed(seed, (2 * i + b) as u64);
                records.extend(solve_block_records(row, block, cfg, point_seed)?);
            }
            Ok(records)
        })
        .collect();
    let mut out = Vec::with_capacity(4 * table.len());
    for records in per_row {
        out.extend(records?);
    }
    Ok(out)
}

pub const EXACT_COLUMNS: [&str; 8] = [
    "R",
    "block",
    "level",
    "energy",
    "theta_opt",
    "evaluations",
    "oracle_energy",
    "abs_error",
];
pub const SHOT_COLUMNS: [&str; 2] = ["measured_energy", "measured_error"];

/// Curve CSV. The first line is a `#` comment naming the manifest; energies
/// carry 6 decimals, full precision lives in the manifest.
pub fn write_curve_csv<W: Write>(
    records: &[CurveRecord],
    manifest_ref: &str,
    mut out: W,
) -> io::Result<()> {
    writeln!(out, "# manifest: {manifest_ref}")?;
    let shots = records.iter().any(|r| r.measured.is_some());
    let mut header = EXACT_COLUMNS.join(",");
    if shots {
        header.push(',');
        header.push_str(&SHOT_COLUMNS.join(","));
    }
    writeln!(out, "{header}")?;
    for r in records {
        let p = &r.point;
        write!(
            out,
            "{:.2},{},{},{:.6},{:.6},{},{:.6},{:.3e}",
            p.r, p.block, p.level, p.energy, p.theta_opt, p.evaluations, r.oracle_energy, r.abs_error
        )?;
        if let Some(m) = r.measured {
            write!(out, ",{:.6},{:.6}", m.energy, m.error)?;
        }
        writeln!(out)?;
    }
    Ok(())
}
