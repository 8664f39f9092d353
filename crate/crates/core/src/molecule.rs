//! H₂ coefficient rows and the Hamiltonians built from them.

use alloc::format;
use alloc::vec::Vec;

use crate::pauli::{ps, PauliSum};
use crate::{Error, Result};

/// Grid lookups treat distances this close as equal.
pub const GRID_TOL: f64 = 1e-9;

/// Coefficients `a0..a4` (Hartree) of `a0·II + a1·ZI + a2·IZ + a3·ZZ + a4·XX`
/// at internuclear separation `r` (Ångström).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoefficientRow {
    pub r: f64,
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

impl CoefficientRow {
    pub fn new(r: f64, a: [f64; 5]) -> Result<Self> {
        let row = Self {
            r,
            a0: a[0],
            a1: a[1],
            a2: a[2],
            a3: a[3],
            a4: a[4],
        };
        row.validate()?;
        Ok(row)
    }

    pub fn coefficients(&self) -> [f64; 5] {
        [self.a0, self.a1, self.a2, self.a3, self.a4]
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(Error::InvalidRow(format!("R must be positive, got {}", self.r)));
        }
        if let Some(bad) = self.coefficients().iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidRow(format!(
                "non-finite coefficient {bad} at R = {}",
                self.r
            )));
        }
        Ok(())
    }
}

/// Rows sorted by strictly increasing `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    rows: Vec<CoefficientRow>,
}

impl CoefficientTable {
    /// Sorts by `r` and rejects invalid rows, duplicates and empty input.
    pub fn new(mut rows: Vec<CoefficientRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyTable);
        }
        rows.iter().try_for_each(CoefficientRow::validate)?;
        rows.sort_by(|a, b| a.r.total_cmp(&b.r));
        if let Some(w) = rows.windows(2).find(|w| w[1].r - w[0].r <= GRID_TOL) {
            return Err(Error::DuplicateDistance(w[1].r));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[CoefficientRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn distances(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|r| r.r)
    }

    /// The row tabulated at `r`. There is no interpolation: off-grid requests
    /// fail and name the neighbouring grid points.
    pub fn row_at(&self, r: f64) -> Result<&CoefficientRow> {
        if let Some(row) = self.rows.iter().find(|row| libm::fabs(row.r - r) <= GRID_TOL) {
            return Ok(row);
        }
        let below = self.rows.iter().rev().find(|row| row.r < r).map(|row| row.r);
        let above = self.rows.iter().find(|row| row.r > r).map(|row| row.r);
        Err(Error::OffGrid {
            requested: r,
            below,
            above,
        })
    }
}

/// `a0·II + a1·ZI + a2·IZ + a3·ZZ + a4·XX`.
pub fn hamiltonian_2q(row: &CoefficientRow) -> PauliSum {
    PauliSum::new(
        2,
        [
            (row.a0, ps("II")),
            (row.a1, ps("ZI")),
            (row.a2, ps("IZ")),
            (row.a3, ps("ZZ")),
            (row.a4, ps("XX")),
        ],
    )
    .expect("fixed two-qubit template")
}

/// Reduction onto `{|01⟩→|0⟩, |10⟩→|1⟩}`:
/// `(a0−a3)·I + (a1−a2)·Z + a4·X`.
pub fn hamiltonian_1q_a(row: &CoefficientRow) -> PauliSum {
    reduced(row.a0 - row.a3, row.a1 - row.a2, row.a4)
}

/// Reduction onto `{|00⟩→|0⟩, |11⟩→|1⟩}`:
/// `(a0+a3)·I + (a1+a2)·Z + a4·X`.
pub fn hamiltonian_1q_b(row: &CoefficientRow) -> PauliSum {
    reduced(row.a0 + row.a3, row.a1 + row.a2, row.a4)
}

fn reduced(c_i: f64, c_z: f64, c_x: f64) -> PauliSum {
    PauliSum::new(1, [(c_i, ps("I")), (c_z, ps("Z")), (c_x, ps("X"))])
        .expect("fixed one-qubit template")
}
