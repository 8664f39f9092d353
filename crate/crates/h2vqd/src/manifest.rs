//! JSON run records written next to every output file.

use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use h2vqd_core::{BetaChoice, Formulation, NelderMeadConfig, SolverConfig};
use serde::Serialize;

use crate::curve::Mode;
use crate::table::LoadedTable;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct TableIdentity {
    pub path: String,
    pub sha256: String,
    pub rows: usize,
}

impl From<&LoadedTable> for TableIdentity {
    fn from(t: &LoadedTable) -> Self {
        Self {
            path: t.origin.clone(),
            sha256: t.sha256.clone(),
            rows: t.table.len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub timestamp: String,
    pub table: TableIdentity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formulation: Option<Formulation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<BetaChoice>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub starts: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimizer: Option<NelderMeadConfig>,
    pub results: T,
}

impl<T: Serialize> RunManifest<T> {
    pub fn new(command: &'static str, table: &LoadedTable, results: T) -> Self {
        Self {
            tool: "h2vqd",
            version: TOOL_VERSION,
            command,
            timestamp: timestamp(),
            table: table.into(),
            formulation: None,
            mode: None,
            shots: None,
            seed: None,
            beta: None,
            starts: None,
            optimizer: None,
            results,
        }
    }

    pub fn with_run(mut self, formulation: Formulation, mode: Mode, solver: &SolverConfig) -> Self {
        self.formulation = Some(formulation);
        self.mode = Some(mode.as_str());
        if let Mode::Shots { shots, seed } = mode {
            self.shots = Some(shots);
            self.seed = Some(seed);
        }
        self.beta = Some(solver.beta);
        self.starts = Some(solver.starts.clone());
        self.optimizer = Some(solver.optimizer);
        self
    }

    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)
    }
}

/// `SOURCE_DATE_EPOCH` when set, otherwise the current time; RFC 3339, UTC.
pub fn timestamp() -> String {
    let pinned = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| DateTime::<Utc>::from_timestamp(secs, 0));
    pinned
        .unwrap_or_else(Utc::now)
        .to_rfc3339_opts(SecondsFormat::Secs, true)
}

/// `out/curve.csv` → `out/curve.manifest.json`.
pub fn manifest_path(output: &Path) -> PathBuf {
    output.with_extension("manifest.json")
}
