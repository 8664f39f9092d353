//! Variational ground- and excited-state solver for the two-qubit H₂
//! Hamiltonian `a0·II + a1·ZI + a2·IZ + a3·ZZ + a4·XX` and its two reduced
//! single-qubit forms.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! arithmetic over tiny dense objects:
//!
//! - [`pauli`] and [`linalg`]: Pauli strings and sums, their dense Hermitian
//!   realization, the 2×2 block split of the H₂ operator, and an exact
//!   eigensolver (closed form for 2×2, cyclic Jacobi above that).
//! - [`state`]: 1- and 2-qubit statevectors and gates.
//! - [`molecule`]: coefficient rows/tables and the three Hamiltonian builders.
//! - [`ansatz`]: the single-parameter UCCSD trial states.
//! - [`optimizer`]: Nelder–Mead simplex search.
//! - [`vqd`]: VQE ground search and VQD deflation for the first excited state.
//! - [`measurement`]: single-qubit-Z readout emulation, exact and finite-shot.
//! - [`oracle`]: exact spectra used to check all of the above.
//!
//! Qubit indices are 0-based; index 0 is the leftmost Pauli label and the
//! most significant bit of a basis-state index, so `|01⟩` is index 1.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ansatz;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod molecule;
pub mod optimizer;
pub mod oracle;
pub mod pauli;
pub mod state;
pub mod vqd;

pub use ansatz::{prepare, subspace_image, AnsatzFamily, AnsatzSpec};
pub use error::{Error, Result};
pub use linalg::{eigh, exact_spectrum, CMatrix, Eigen, HermitianMatrix};
pub use measurement::{
    energy_from_measurements, measure_exact, measure_shots, recipe_for, EnergyEstimate,
    HamiltonianModel, MappingRecipe, Readout, ShotEstimate,
};
pub use molecule::{
    hamiltonian_1q_a, hamiltonian_1q_b, hamiltonian_2q, CoefficientRow, CoefficientTable,
};
pub use optimizer::{minimize, minimize_multistart, NelderMeadConfig, OptimizationResult};
pub use oracle::{full_report, SpectrumReport};
pub use pauli::{block_decompose_h2, matrix_of, matrix_of_sum, Pauli, PauliString, PauliSum};
pub use state::{apply, basis_state, expectation, Gate, Observable, StateVector};
pub use vqd::{
    solve_all_levels, solve_excited, solve_ground, vqe_objective, BetaChoice, Block,
    DeflationTerm, EnergyPoint, Formulation, Solution, SolverConfig, VqeObjective,
};

/// Complex scalar used for amplitudes and matrix entries.
pub type C64 = num_complex::Complex64;
