//! Exact spectra for checking variational results.
//!
//! Two independent routes: the closed-form 2×2 eigenvalues of the blocks
//! from [`block_decompose_h2`], and cyclic Jacobi on the full 4×4 matrix.

use crate::ansatz::{subspace_image, AnsatzFamily};
use crate::linalg::{eigenvalues_2x2, exact_spectrum, CMatrix};
use crate::molecule::{hamiltonian_2q, CoefficientRow};
use crate::pauli::{block_decompose_h2, matrix_of_sum, PauliSum};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectrumReport {
    pub r: f64,
    pub eigenvalues_4q: [f64; 4],
    pub eigenvalues_a: [f64; 2],
    pub eigenvalues_b: [f64; 2],
    /// Largest of the Jacobi reconstruction residual `‖H − VΛV†‖` and the
    /// pair residuals `‖Hv − λv‖`.
    pub residual: f64,
}

impl SpectrumReport {
    /// `max |sorted(A ∪ B) − spectrum_4q|`.
    pub fn block_union_deviation(&self) -> f64 {
        let mut union = [
            self.eigenvalues_a[0],
            self.eigenvalues_a[1],
            self.eigenvalues_b[0],
            self.eigenvalues_b[1],
        ];
        union.sort_by(f64::total_cmp);
        union
            .iter()
            .zip(&self.eigenvalues_4q)
            .map(|(u, f)| libm::fabs(u - f))
            .fold(0.0, f64::max)
    }

    pub fn block_union_holds(&self, tol: f64) -> bool {
        self.block_union_deviation() <= tol
    }

    pub fn ground(&self) -> f64 {
        self.eigenvalues_4q[0]
    }
}

fn closed_form(m: &CMatrix) -> [f64; 2] {
    eigenvalues_2x2(m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)])
}

pub fn full_report(row: &CoefficientRow) -> SpectrumReport {
    let h = hamiltonian_2q(row);
    let (block_a, block_b) = block_decompose_h2(&h).expect("five-term template");
    let full = matrix_of_sum(&h);
    let eig = full.eigh().expect("4×4 Hermitian");
    let residual = eig
        .reconstruction_residual(&full)
        .max(eig.pair_residual(&full));
    SpectrumReport {
        r: row.r,
        eigenvalues_4q: eig.values.as_slice().try_into().expect("four eigenvalues"),
        eigenvalues_a: closed_form(&block_a),
        eigenvalues_b: closed_form(&block_b),
        residual,
    }
}

/// `λ_max − λ_min` of `h`.
pub fn spectral_spread(h: &PauliSum) -> Result<f64> {
    let spectrum = exact_spectrum(&matrix_of_sum(h))?;
    Ok(spectrum[spectrum.len() - 1] - spectrum[0])
}

/// The two eigenvalues of `h` restricted to the subspace an ansatz family
/// explores; for single-qubit families that is the whole space.
pub fn subspace_levels(h: &PauliSum, family: AnsatzFamily) -> Result<[f64; 2]> {
    if h.num_qubits() != family.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: family.num_qubits(),
            actual: h.num_qubits(),
        });
    }
    let m = matrix_of_sum(h);
    let block = match subspace_image(family) {
        Ok(labels) => {
            let idx = labels.map(|l| usize::from_str_radix(l, 2).expect("binary label"));
            m.restrict(&idx)
        }
        Err(_) => m.into_matrix(),
    };
    Ok(closed_form(&block))
}
